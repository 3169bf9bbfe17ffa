#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "specpoint/besselintegral.hpp"
#include "specpoint/specfun.hpp"

using namespace specpoint;
using std::numbers::pi;

TEST_CASE("spectral weights") {
  const SpectralWeight sw{50, 8};
  CHECK(weight_h(50, sw) == doctest::Approx(1.0 + std::exp(-4.0 * 2500 / 64)));
  CHECK(weight_h(0, sw) == doctest::Approx(2.0 * std::exp(-2500.0 / 64)).epsilon(1e-14));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-100, 100), uy(0.1, 10);
  for (int i = 0; i < 50; ++i) {
    const double t = u(rng), y = uy(rng);
    CHECK(weight_h(-t, sw) == weight_h(t, sw));
    CHECK(weight_h_y(t, y, sw) == doctest::Approx(weight_h_y(t, 1.0 / y, sw)).epsilon(1e-12));
    CHECK(weight_h_y(t, 1.0, sw) == weight_h(t, sw));
  }
  CHECK(weight_h_y(50, std::exp(1.0), sw) == doctest::Approx((1 + std::exp(-4.0 * 2500 / 64)) * std::cos(100.0)));
  CHECK_THROWS_AS((SpectralWeight{50, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((SpectralWeight{50, 49}).validate_asymptotic(), std::invalid_argument);
  CHECK_NOTHROW((SpectralWeight{50, 8}).validate_asymptotic());
}

TEST_CASE("g weight and rho") {
  const SpectralWeight sw{50, 8};
  CHECK(g_weight(0, sw) == doctest::Approx(4.0 / (pi * std::sqrt(pi))).epsilon(1e-15));
  CHECK(g_weight(0, sw) == doctest::Approx(0.71835).epsilon(1e-5));
  const double r1 = 1.0 / sw.M;
  const double expect = 2.0 / (pi * std::sqrt(pi)) *
                        (2 * std::exp(-1.0) * std::cos(2 * sw.T / sw.M) - 2 * (sw.M / sw.T) * std::exp(-1.0) * std::sin(2 * sw.T / sw.M));
  CHECK(g_weight(r1, sw) == doctest::Approx(expect).epsilon(1e-14));
  for (double r : {0.01, 0.3, 1.7}) CHECK(g_weight(-r, sw) == g_weight(r, sw));

  CHECK(rho_pm(0.0).first == 0.0);
  CHECK(rho_pm(0.0).second == 0.0);
  for (double r : {-2.0, -1e-9, 1e-12, 0.37, 3.0}) {
    const auto [p, m] = rho_pm(r);
    CHECK(p == doctest::Approx(std::sinh(r) + std::cosh(r) - 1).epsilon(1e-14));
    CHECK(m == doctest::Approx(std::sinh(r) - std::cosh(r) + 1).epsilon(1e-14));
    CHECK(std::abs((p - m) - 2 * (std::cosh(r) - 1)) <= 1e-14 * std::cosh(r));
    CHECK(std::abs((p + m) - 2 * std::sinh(r)) <= 1e-14 * std::cosh(r));
  }
  CHECK(I_cutoff(sw, 1e-16) >= 6.1 / sw.M);
}

TEST_CASE("I(v,w) closed forms, conjugation and small-parameter decay") {
  // M T int g = 0 since the two Gaussian pieces cancel; each piece has a closed form
  const SpectralWeight sw{10, 8};
  const double R = I_cutoff(sw, 1e-14);
  QuadOptions opt;
  opt.abs_tol = 1e-14;
  const auto p1 = integrate([&](double r) -> cplx { return 2 * std::exp(-sw.M * sw.M * r * r) * std::cos(2 * sw.T * r); }, -R, R, opt);
  CHECK(p1.real() == doctest::Approx(2 * std::sqrt(pi) / sw.M * std::exp(-sw.T * sw.T / (sw.M * sw.M))).epsilon(1e-10));
  const auto I0 = I_integral(0, 0, sw, 1e-12);
  CHECK(std::abs(I0.value) < 1e-8);

  const SpectralWeight big{50, 8};
  const auto a = I_integral(70, 40, big, 1e-10);
  // conjugate: flip the phase sign
  const double Rb = I_cutoff(big, 1e-10);
  const auto b = oscillatory_integral(
      [](double r) {
        const auto [p, m] = rho_pm(r);
        return -(70 * p - 40 * m) / pi;
      },
      [&](double r) { return cplx(400 * g_weight(r, big), 0); }, -Rb, Rb, 1e-10);
  CHECK(std::abs(a.value - std::conj(b.value)) < 1e-8);

  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const double v = big.T / 4 * i / 9.0, w = big.T / 4 * (9 - i) / 9.0;
    worst = std::max(worst, std::abs(I_integral(v, w, big, 1e-12).value) / (big.M * big.T));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("diagonal H main term") {
  const SpectralWeight a{100, 10};
  CHECK(diagonal_H(a).real() == doctest::Approx(359.16).epsilon(1e-3));
  CHECK(diagonal_H(a).real() == doctest::Approx(diagonal_H_main_term(a)).epsilon(1e-10));
  const SpectralWeight b{50, 8};
  CHECK(diagonal_H(b).real() == doctest::Approx(diagonal_H_main_term(b)).epsilon(1e-4));
}

TEST_CASE("H: small-argument route, symmetry and route agreement at moderate T") {
  const SpectralWeight sw{14, 4};
  // small-x route: u -> 0 vanishes, and stays negligible for u <= 0.3
  for (double u : {0.0, 0.1, 0.3}) {
    const auto rows = smallx_decay_scan(SpectralWeight{50, 8}, {u}, 4);
    CHECK(rows[0].max_abs_H <= 1e-8);
  }
  CHECK(bessel_H_direct(0.5, 1.0, sw).status == QuadStatus::out_of_regime);
  // H(x, y) = H(x, 1/y)
  const auto h1 = bessel_H_direct(30.0, 1.7, sw, 1e-10);
  const auto h2 = bessel_H_direct(30.0, 1.0 / 1.7, sw, 1e-10);
  CHECK(std::abs(h1.real() - h2.real()) <= 10 * (h1.err_estimate + h2.err_estimate) + 1e-12);
  // refinement
  const auto h3 = bessel_H_direct(30.0, 1.7, sw, 1e-11);
  CHECK(std::abs(h1.real() - h3.real()) < 1e-9);
  // direct vs I route where H is large
  const auto r = compare_H_asymptotic(4 * 3 * sw.T / 2.0, 1.0, sw, 1e-10);
  CHECK(std::abs(r.H_direct) > 1e-3);
  CHECK(r.rel_residual < 1e-4);
  // the small route and the direct route overlap near x = 1
  const auto s = bessel_H_small(1.2, 1.0, sw, 1e-13);
  const auto d = bessel_H_direct(1.2, 1.0, sw, 1e-12);
  CHECK(std::abs(s.real() - d.real()) < 1e-10);
}
