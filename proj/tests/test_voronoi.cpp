#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "specpoint/voronoi.hpp"

using namespace specpoint;
using std::numbers::pi;

namespace {

const std::array<cplx, 3> kLow{cplx(0, 0.5), 0.0, cplx(0, -0.5)};

double log_abs_gamma_stirling(cplx z) {
  return (z.real() - 0.5) * std::log(std::abs(z.imag())) - pi * std::abs(z.imag()) / 2 + 0.5 * std::log(2 * pi);
}

cplx gamma_real_product(double s, const std::array<double, 3>& lam) {
  double v = std::pow(pi, -1.5 * s);
  for (double l : lam) v *= std::tgamma((s + l) / 2);
  return v;
}

const GL3Form& sym2_large() {
  static const GL3Form f = [] {
    const Spectrum s = load_spectrum(std::string(SPECPOINT_DATA_DIR) + "/maass_t9p53.txt");
    return sym_square_lift(s.forms.at(0), 30000);
  }();
  return f;
}

const MellinHankel& sym2_hankel() {
  static const MellinHankel mh(HankelSetup::bump(sym2_large().langlands(), 16, 3));
  return mh;
}

}  // namespace

TEST_CASE("gamma factor") {
  CHECK(std::abs(log_gamma_factor(1.0, {0.0, 0.0, 0.0})) < 1e-14);
  const std::array<cplx, 3> lam{cplx(0, 19.07), 0.0, cplx(0, -19.07)};
  for (cplx s : {cplx(0.3, 2.0), cplx(-1, 40.0), cplx(2.5, -7.0)}) {
    const cplx a = std::exp(log_gamma_factor(std::conj(s), lam));
    const cplx b = std::conj(std::exp(log_gamma_factor(s, lam)));
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
  }
  // Stirling slope at large height
  for (double t : {1e4, 3e4}) {
    const cplx s(-1.0, t);
    double oracle = 1.5 * std::log(pi);
    for (const cplx& l : lam) oracle += log_abs_gamma_stirling((s + l) / 2.0);
    CHECK(std::abs(log_gamma_factor(s, lam).real() - oracle) < 1e-3);
  }
  CHECK_THROWS_AS(log_gamma_factor(0.0, {0.0, 0.0, 0.0}), std::domain_error);
  CHECK(dual_parameters(lam)[0] == cplx(0, 19.07));
}

TEST_CASE("G+- identities") {
  const std::array<cplx, 3> lam{cplx(0, 19.07), 0.0, cplx(0, -19.07)};
  const auto dual = dual_parameters(lam);
  for (double t : {-30.0, 0.0, 1.5, 12.0}) {
    const cplx s(0.5, t);
    CHECK(std::abs(std::exp(log_gamma_factor(1.0 - s, dual) - log_gamma_factor(s, lam))) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (double t : {-200.0, -3.0, 0.25, 9.0, 150.0}) {
    const cplx s(-1.0, t);
    const auto [p, m] = G_pm(s, lam);
    const cplx r = 2.0 * std::exp(log_gamma_factor(1.0 - s, dual) - log_gamma_factor(s, lam));
    CHECK(std::abs(p + m - r) <= 1e-12 * std::abs(r));
  }
  // independent path: real Gamma products at real s
  const std::array<double, 3> rl{0.1, 0.2, -0.3}, rd{-0.1, -0.2, 0.3};
  const double s = -1.3;
  const cplx a = gamma_real_product(1 - s, rd) / gamma_real_product(s, rl);
  const cplx b = gamma_real_product(2 - s, rd) / gamma_real_product(1 + s, rl);
  const auto [p, m] = G_pm(s, {0.1, 0.2, -0.3});
  CHECK(std::abs(p - (a + cplx(0, 1) * b)) <= 1e-12 * std::abs(p));
  CHECK(std::abs(m - (a - cplx(0, 1) * b)) <= 1e-12 * std::abs(m));
  // the denominator pole at s = -1, t = 0 gives a zero, not an error
  CHECK_NOTHROW(G_pm(cplx(-1, 0), lam));
  CHECK_THROWS_AS(G_pm(cplx(1, 0), {0.0, 0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(G_pm(cplx(3, 1e-7), {0.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("Mellin route: zero weight, linearity, reality") {
  HankelSetup zero = HankelSetup::bump(kLow, 16);
  zero.weight = [](double) { return 0.0; };
  const MellinHankel mz(zero);
  CHECK(mz(3.0) == cplx(0.0));
  CHECK(mz(-250.0) == cplx(0.0));

  HankelSetup s1 = HankelSetup::bump(kLow, 16, 3);
  s1.t_cap = 600;
  HankelSetup s2 = s1, s12 = s1;
  const SmoothBump b{16, 32, 3};
  s2.weight = [b](double x) { return b(x) * std::cos(x / 3.0) * x / 16.0; };
  s12.weight = [b, w2 = s2.weight](double x) { return b(x) + w2(x); };
  const MellinHankel m1(s1), m2(s2), m12(s12);
  for (double y : {0.01, 0.7, 5.0, 80.0, -2.0, -40.0}) {
    const cplx lhs = m12(y), rhs = m1(y) + m2(y);
    const double eps = 10 * (m1.rounding_estimate(y) + m2.rounding_estimate(y) + m12.rounding_estimate(y));
    CHECK(std::abs(lhs - rhs) <= eps);
  }
  for (double t : {0.0, 3.0, 40.0}) {
    CHECK(std::abs(m1.mellin_weight(-t) - std::conj(m1.mellin_weight(t))) < 1e-15);
  }
  // self-dual parameters and a real weight: Omega(-y) = conj Omega(y)
  for (double y : {0.05, 1.0, 30.0}) {
    const auto [p, m] = m1.both(y);
    CHECK(std::abs(m - std::conj(p)) <= m1.rounding_estimate(y) + m1.rounding_estimate(-y));
  }
  CHECK_THROWS_AS(m1(0.0), std::invalid_argument);
}

TEST_CASE("kernel calibration and cross-route agreement") {
  const MellinHankel mh(HankelSetup::bump(kLow, 16, 3));
  std::vector<double> fit_grid, check_grid;
  for (int i = 0; i < 10; ++i) {
    fit_grid.push_back(125.0 / 16 * std::pow(8.0, i / 9.0));
    check_grid.push_back(125.0 / 16 * std::pow(8.0, (i + 0.5) / 10.0));
  }
  const KernelAsymptotics ka = calibrate_kernel(mh, 3, fit_grid);
  CHECK(ka.fit_residual < 1e-6);
  CHECK(ka.x_grid.size() == 10);
  for (double y : check_grid)
    for (double sg : {1.0, -1.0}) {
      const cplx om = mh(sg * y);
      const QuadratureResult k = hankel_kernel_route(sg * y, mh.setup(), ka);
      CHECK(k.converged());
      CHECK(std::abs(k.value - om) <= 1e-3 * std::abs(om));
    }
  CHECK(hankel_kernel_route(0.5, mh.setup(), ka).status == QuadStatus::out_of_regime);

  // refit ladder: the K = 1 residual falls as x_min grows
  double prev = 1.0;
  for (double ymin : {7.8125, 20.0, 60.0}) {
    std::vector<double> g;
    for (int i = 0; i < 10; ++i) g.push_back(ymin * std::pow(8.0, i / 9.0));
    const double r = calibrate_kernel(mh, 1, g).fit_residual;
    CHECK(r < prev);
    prev = r;
  }
  // split-sample stability of the leading coefficient
  std::vector<double> ga, gb;
  for (int i = 0; i < 6; ++i) {
    ga.push_back(20.0 * std::pow(4.0, i / 5.0));
    gb.push_back(100.0 * std::pow(4.0, i / 5.0));
  }
  const cplx Ba = calibrate_kernel(mh, 1, ga).B_minus[0], Bb = calibrate_kernel(mh, 1, gb).B_minus[0];
  CHECK(std::abs(Ba - Bb) <= 5e-3 * std::abs(Bb));

  HankelSetup zero = mh.setup();
  zero.weight = [](double) { return 0.0; };
  const MellinHankel mz(zero);
  CHECK_THROWS_AS(calibrate_kernel(mz, 1, fit_grid), std::invalid_argument);
  CHECK(hankel_kernel_route(20.0, zero, ka).value == cplx(0.0));
  CHECK_THROWS_AS(calibrate_kernel(mh, 4, fit_grid), std::invalid_argument);
  CHECK_THROWS_AS(calibrate_kernel(mh, 2, {0.5, 1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("Voronoi identity for a symmetric-square lift") {
  const GL3Form& f = sym2_large();
  const MellinHankel& mh = sym2_hankel();
  const VoronoiReport r = voronoi_residual(f, 1, 1, 1, mh, 1e-6);
  CHECK(std::abs(r.direct) > 1e-3);
  CHECK(r.relative <= 1e-2);
  CHECK(r.tail_change < 1e-6);

  const VoronoiReport a = voronoi_residual(f, 1, 1, 2, mh, 1e-5);
  const VoronoiReport b = voronoi_residual(f, 1, 3, 2, mh, 1e-5);
  CHECK(std::abs(a.residual - b.residual) <= 1e-12);
  CHECK(std::abs(a.dual - b.dual) <= 1e-12);
  CHECK(a.relative <= 1e-2);

  HankelSetup zero = mh.setup();
  zero.weight = [](double) { return 0.0; };
  const MellinHankel mz(zero);
  CHECK(voronoi_residual(f, 1, 1, 2, mz, 1e-8).residual == 0.0);

  CHECK_THROWS_AS(voronoi_residual(f, 1, 2, 4, mh, 1e-6), std::invalid_argument);
  const Spectrum s = load_spectrum(std::string(SPECPOINT_DATA_DIR) + "/maass_spectrum.txt");
  const GL3Form short_row = sym_square_lift(s.forms.at(0), 1024);
  try {
    voronoi_residual(short_row, 1, 1, 3, mh, 1e-8);
    FAIL("expected out_of_range");
  } catch (const std::out_of_range& e) {
    CHECK(std::string(e.what()).find("need A(1, n) for n <=") != std::string::npos);
  }
}
