#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "specpoint/quadrature.hpp"
#include "specpoint/specfun.hpp"
#include "specpoint/spectral.hpp"

namespace specpoint {

/// log of pi^{-3s/2} prod Gamma((s + lambda_i)/2).
/// @throws std::domain_error at a pole
cplx log_gamma_factor(cplx s, const std::array<cplx, 3>& langlands);

/// Langlands parameters of the dual form: -conj(lambda_i).
std::array<cplx, 3> dual_parameters(const std::array<cplx, 3>& langlands);

/// G^{+-}(s) = gamma(1-s, dual)/gamma(s) +- i^{-3} gamma(2-s, dual)/gamma(1+s).
/// @throws std::domain_error within 1e-6 of a pole of either numerator
std::pair<cplx, cplx> G_pm(cplx s, const std::array<cplx, 3>& langlands);

/// Test weight and contour for the Hankel transform.
struct HankelSetup {
  std::array<cplx, 3> langlands{};
  RealFn weight;  // smooth, supported in [X1, X2]
  double X1 = 1.0, X2 = 2.0;
  double sigma = -1.0;
  double t_cap = 0.0;   // 0 picks the cut where |G w~| falls below 1e-17 of its peak
  double t_step = 0.25;

  /// SmoothBump of order k on [N, 2N].
  static HankelSetup bump(const std::array<cplx, 3>& langlands, double N, int k = 3);
};

/// Mellin-Barnes route:
///   Omega(+-y) = (1/4 pi i) int_{(sigma)} G^{+-}(s) w~(s) y^{s-1} ds,  y > 0,
/// evaluated as a trapezoid sum on a uniform t-grid (the integrand is smooth and
/// negligible at the cut, so the sum converges spectrally). The products G^{+-} w~
/// are tabulated once; each Omega costs one pass over the grid.
class MellinHankel {
 public:
  explicit MellinHankel(const HankelSetup& setup);

  /// Omega(y) for signed y != 0.
  cplx operator()(double y) const;
  /// (Omega(y), Omega(-y)) for y > 0 in one pass
  std::pair<cplx, cplx> both(double y) const;
  /// Rounding estimate for Omega(y). w~ carries an absolute error near eps ||w x^{sigma-1}||_1 at
  /// every height, uncorrelated between heights, and G amplifies it towards the cut.
  double rounding_estimate(double y) const;
  /// w~(sigma + it) by adaptive quadrature
  cplx mellin_weight(double t) const;

  const HankelSetup& setup() const { return setup_; }
  double t_cap() const { return t_cap_; }
  std::size_t grid_size() const { return ts_.size(); }

 private:
  HankelSetup setup_;
  double t_cap_ = 0, dt_ = 0;
  std::vector<double> ts_;
  std::vector<cplx> gp_, gm_;  // dt G^{+-}(s) w~(s) / (4 pi) on the grid
  double abs_plus_ = 0, abs_minus_ = 0;
};

/// J(+-x) ~ e(+-3 x^{1/3}) x^{-1/3} sum_{k<K} B_k^{+-} x^{-k/3}
struct KernelAsymptotics {
  std::vector<cplx> B_plus, B_minus;
  int K = 0;
  double x_min = 0;
  double fit_residual = 0;  // relative l2 residual of the least-squares fit
  std::vector<double> x_grid;  // N y over the calibration grid
  void write(std::ostream& out) const;
};

/// Fits B_k^{+-} (K <= 3) by least squares so that the kernel-route transform of the
/// setup's weight reproduces the Mellin-route Omega(+-y) at the given y > 0.
/// x_min = N y_min with N the lower end of the weight support.
/// @throws std::invalid_argument for K outside [1, 3], an empty grid, x_min < 10 or a zero weight
/// @throws std::runtime_error when the normal equations are ill-conditioned
KernelAsymptotics calibrate_kernel(const MellinHankel& mellin, int K, const std::vector<double>& y_grid);

/// Omega(y) = int w(x) J(-x y) dx with J from the fitted expansion.
/// Status out_of_regime when N |y| < ka.x_min.
QuadratureResult hankel_kernel_route(double y, const HankelSetup& setup, const KernelAsymptotics& ka,
                                     double tol = 1e-13);

struct VoronoiReport {
  cplx direct = 0, dual = 0;
  double residual = 0, relative = 0;
  double tail_change = 0;  // |dual(1.5 n_max) - dual(n_max)|
  std::vector<std::int64_t> n_max;  // per divisor d of c m
  std::vector<std::int64_t> divisors;
  double y_cut = 0;
  double omega_threshold = 0;  // |Omega| level at which the dual sums were cut
};

/// y beyond which |Omega(+-y)| < tol on a log grid reaching 1e4 y.
double omega_cutoff(const MellinHankel& mellin, double tol);

/// Both sides of the Voronoi formula for the twist e(alpha^{-1} n / c).
/// The dual sums stop where |Omega| < dual_tail_tol; the cut is tightened tenfold (up to
/// four times) until 50% more terms move the dual side by less than dual_tail_tol.
/// @throws std::invalid_argument unless gcd(alpha, c) = 1
/// @throws std::out_of_range stating the required range when the coefficient row is short
VoronoiReport voronoi_residual(const GL3Form& f, std::int64_t m, std::int64_t alpha, std::int64_t c,
                               const MellinHankel& mellin, double dual_tail_tol = 1e-8);

}  // namespace specpoint
