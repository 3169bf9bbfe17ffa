#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "specpoint/quadrature.hpp"

namespace specpoint {

// e(x) = exp(2 pi i x), with x reduced modulo 1 before the exponential.
cplx e(double x);

/// Principal-branch log Gamma. Lanczos (g = 7) for Re z >= 1/2, upward
/// recurrence otherwise so the branch stays continuous off the negative axis.
/// @throws std::domain_error at non-positive integers
cplx log_gamma(cplx z);

struct ZetaOrder {
  int N = 0;  // direct terms; 0 picks a default from |s|
  int K = 0;  // Euler-Maclaurin correction terms; 0 picks a default
};

/// Riemann zeta for Re s >= 1 by Euler-Maclaurin summation.
/// @throws std::domain_error at s = 1 or for Re s < 1
cplx zeta(cplx s, ZetaOrder order = {});

/// J_nu(x) for complex order by its power series, x > 0 moderate.
/// Returns the value multiplied by exp(-log_scale); pass log_scale = 0 for plain J.
cplx bessel_j_series(cplx nu, double x, double log_scale = 0.0);

/// B(t, x) = int_R cos(x cosh r) cos(2 t r) dr.
/// The half-line integral is rotated onto Im r = theta0 where the integrand decays
/// double-exponentially, and cut once the envelope bound falls below tol.
/// x < 1 returns status out_of_regime (the small-argument series path applies there).
QuadratureResult mehler_sonine_kernel(double t, double x, double tol = 1e-12);

struct PhaseBoundParams {
  double P = 1, Q = 1, R = 1, S = 1, Z = 1;
  int A = 0;
  double a = 0, b = 1;
};

/// (b - a) S (Z/(R^2 Q^2) + 1/(R Q) + 1/(R P))^A
double stationary_phase_bound(const PhaseBoundParams& p);

struct InertProfile {
  double X = 1;
  std::vector<double> ratios;  // sup |x^i f^(i)(x)| / X^i, i = 0..max_order
  std::vector<bool> flagged;   // order dominated by rounding noise
  bool bounded_by(double C) const;
};

InertProfile inertness_profile(const ComplexFn& f, double X, double a, double b, int max_order,
                               int grid_points = 64);

/// Smooth bump supported on (lo, hi): exp(-1/(1-u^2)^k) in the centered variable,
/// normalized to peak value 1. Larger k gives faster Fourier decay.
struct SmoothBump {
  double lo = 1.0, hi = 2.0;
  int k = 1;
  double operator()(double x) const;
};

/// I_gamma^{+-}(lambda) = int e(lambda (x +- gamma x^{1/gamma})) w(x) dx over [rho, 2 rho].
QuadratureResult igamma_model_integral(int sign, double gamma, double lambda, double rho,
                                       const RealFn& weight, double tol = 1e-13);

/// e(lambda (gamma - 1)) sqrt(lambda) I_gamma^-(lambda) on [rho, 2 rho].
/// @throws std::invalid_argument unless 1/2 <= rho/sqrt(2) <= 2
cplx vgamma_extract(double gamma, double lambda, double rho, const RealFn& weight, double tol = 1e-13);

}  // namespace specpoint
