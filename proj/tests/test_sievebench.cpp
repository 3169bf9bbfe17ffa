#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "specpoint/arith.hpp"
#include "specpoint/sievebench.hpp"
#include "specpoint/specfun.hpp"

using namespace specpoint;
using std::numbers::pi;

namespace {

const std::vector<MaassForm>& bundled() {
  static const Spectrum s = load_spectrum(std::string(SPECPOINT_DATA_DIR) + "/maass_spectrum.txt");
  return s.forms;
}

// brute force over units and a Gauss-Legendre grid in t
double young_oracle(const Sequence& seq, double gamma, double tau, double v, std::int64_t C) {
  const GaussRule g = gauss_legendre(40);
  double total = 0.0;
  for (std::int64_t c = 1; c <= C; ++c) {
    const double fmax = std::pow(2.0 * seq.N, gamma) / (c * v);
    const int panels = std::max(4, static_cast<int>(std::ceil(4.0 * tau * fmax)));
    const arith::ResidueTable rt(c);
    double sc = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = -tau + 2 * tau * p / panels, b = a + 2 * tau / panels;
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double t = 0.5 * (a + b) + 0.5 * (b - a) * g.nodes[i];
        double s = 0.0;
        for (std::int64_t al : rt.units()) {
          cplx acc = 0.0;
          for (std::int64_t n = seq.first(); n <= seq.last(); ++n)
            acc += seq(n) * e(static_cast<double>(al * n % c) / c + std::pow(static_cast<double>(n), gamma) * t / (c * v));
          s += std::norm(acc);
        }
        sc += 0.5 * (b - a) * g.weights[i] * s;
      }
    }
    total += sc / c;
  }
  return total;
}

}  // namespace

TEST_CASE("Young large sieve: closed form against brute force") {
  const Sequence z(8, false);
  CHECK(young_ls_lhs(z, 1.0, 0.5, 1.0, 4) == 0.0);
  CHECK(young_ls_ratio(z, 1.0, 0.5, 1.0, 4).ratio == 0.0);

  const Sequence s = Sequence::random(12, 7, false);
  for (double gamma : {1.0, 0.5, 1.5}) {
    const double lhs = young_ls_lhs(s, gamma, 0.8, 2.0, 5);
    CHECK(lhs == doctest::Approx(young_oracle(s, gamma, 0.8, 2.0, 5)).epsilon(1e-9));
  }
  // orthogonality on a unit interval
  CHECK(young_ls_lhs(s, 1.0, 0.5, 1.0, 1) == doctest::Approx(s.norm2()).epsilon(1e-12));
  // tau = pi: diagonal 2 pi ||a||^2 plus the off-diagonal double sum
  double oracle = 0.0;
  for (std::int64_t m = s.first(); m <= s.last(); ++m)
    for (std::int64_t n = s.first(); n <= s.last(); ++n) {
      const double d = static_cast<double>(m - n);
      const double k = m == n ? 2 * pi : std::sin(2 * pi * pi * d) / (pi * d);
      oracle += (s(m) * std::conj(s(n))).real() * k;
    }
  CHECK(young_ls_lhs(s, 1.0, pi, 1.0, 1) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK_THROWS_AS(young_ls_lhs(s, 0.0, 1.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(young_ls_lhs(s, 1.0, 1.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("Young large sieve: monotonicity and scaling") {
  const Sequence s = Sequence::random(32, 3, false);
  double prev = 0.0;
  for (std::int64_t C = 1; C <= 64; C *= 2) {
    const double v = young_ls_lhs(s, 1.0, 1.5, 1.0, C);
    CHECK(v >= prev);
    prev = v;
  }
  prev = 0.0;
  for (double tau : {0.1, 0.2, 0.4, 0.8, 1.6}) {
    const double v = young_ls_lhs(s, 0.5, tau, 1.0, 8);
    CHECK(v >= prev);
    prev = v;
  }
  const cplx k(0.3, -1.7);
  const auto a = young_ls_ratio(s, 1.0, 1.5, 1.0, 8), b = young_ls_ratio(s.scaled(k), 1.0, 1.5, 1.0, 8);
  CHECK(b.lhs == doctest::Approx(std::norm(k) * a.lhs).epsilon(1e-10));
  CHECK(std::abs(b.ratio - a.ratio) <= 1e-10 * a.ratio);
}

TEST_CASE("Corollary ratio and Dirichlet polynomials") {
  const auto& forms = bundled();
  const SpectralWeight sw{14, 4};
  CHECK(corollary_ratio(Sequence(16, false), sw, forms).lhs == 0.0);

  // single form, single n
  std::vector<MaassForm> one;
  for (const auto& f : forms)
    if (f.t > 14 && f.t <= 18 && one.empty()) one.push_back(f);
  REQUIRE(one.size() == 1);
  Sequence s1(16, false);
  s1.set(23, cplx(0.6, 0.8));
  const auto r1 = corollary_ratio(s1, sw, one);
  CHECK(r1.lhs == doctest::Approx(one[0].omega * std::pow(one[0].lambda(23), 2)).epsilon(1e-13));
  CHECK(r1.ratio <= one[0].omega * std::pow(one[0].lambda(23), 2) / (sw.M * (sw.T + 16)) * (1 + 1e-12));

  const Sequence s = Sequence::random(64, 11, false);
  const auto a = corollary_ratio(s, sw, forms);
  const auto b = corollary_ratio(s.scaled(std::polar(1.0, 2 * pi * 0.37)), sw, forms);
  CHECK(std::abs(a.lhs - b.lhs) <= 1e-10 * a.lhs);
  CHECK(a.ratio < 10);
  CHECK_THROWS_AS(corollary_ratio(Sequence::random(600, 1, false), sw, forms), std::out_of_range);

  Sequence d1(20, false);
  d1.set(31, cplx(-2.0, 1.0));
  CHECK(dirichlet_poly_ratio(d1, 7.5).lhs == doctest::Approx(2 * 7.5 * 5.0).epsilon(1e-14));
  QuadOptions opt;
  opt.abs_tol = 1e-10;
  const auto q = integrate(
      [&](double t) -> cplx {
        cplx acc = 0.0;
        for (std::int64_t n = s.first(); n <= s.last(); ++n) acc += s(n) * std::polar(1.0, t * std::log(double(n)));
        return std::norm(acc);
      },
      -20.0, 20.0, opt);
  const auto dr = dirichlet_poly_ratio(s, 20.0);
  CHECK(dr.lhs == doctest::Approx(q.real()).epsilon(1e-9));
  CHECK(dr.ratio <= 2 * pi);
  CHECK(dirichlet_poly_ratio(Sequence(8, false), 3.0).ratio == 0.0);
}

TEST_CASE("Deshouillers-Iwaniec and Luo majorants") {
  const auto& forms = bundled();
  const auto z = di_luo_comparison(Sequence(16, false), 14, forms);
  CHECK(z.lhs == 0.0);
  CHECK(z.ratio_first == 0.0);
  const Sequence s = Sequence::random(32, 5, false);
  const auto r = di_luo_comparison(s, 14, forms);
  CHECK(r.rhs_second < r.rhs_first);
  CHECK(r.forms_used == 3);
  CHECK(std::isfinite(r.ratio_first));
  const auto r2 = di_luo_comparison(Sequence::random(32, 6, false), 14, forms);
  CHECK(std::isfinite(r2.ratio_second));
  CHECK_THROWS_AS(di_luo_comparison(s, 100, forms), std::invalid_argument);
}

TEST_CASE("moment demo") {
  const auto& forms = bundled();
  const SpectralWeight sw{14, 4};
  std::vector<cplx> row(200, 0.0);
  row[1] = 1.0;
  const GL3Form zero({0.0, 0.0, 0.0}, row, true);
  const auto z = moment_demo(zero, forms, sw, 32, 1);
  CHECK(z.S == 0.0);
  CHECK(z.T_eis == 0.0);

  const GL3Form f = sym_square_lift(forms.at(0), 256);
  const auto a = moment_demo(f, forms, sw, 32, 1);
  const auto b = moment_demo(f.dual(), forms, sw, 32, 1);
  CHECK(a.S == b.S);
  CHECK(a.T_eis == b.T_eis);
  CHECK(a.S > 0);
  CHECK(a.T_eis > 0);
  CHECK(std::isfinite(a.ratio));
  CHECK_THROWS_AS(moment_demo(f, forms, sw, 200, 1), std::out_of_range);
}

TEST_CASE("sieve suite is deterministic") {
  const auto& forms = bundled();
  const SpectralWeight sw{14, 4};
  const auto a = sieve_suite({16}, 5, 100, sw, forms);
  const auto b = sieve_suite({16}, 5, 100, sw, forms);
  REQUIRE(a.rows.size() == 25);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].ratio == b.rows[i].ratio);
  CHECK(a.max_young == b.max_young);
}
