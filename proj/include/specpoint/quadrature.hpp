#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace specpoint {

using cplx = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<cplx(double)>;

enum class QuadStatus { ok, budget_exhausted, out_of_regime };

struct QuadratureResult {
  cplx value = 0.0;
  double err_estimate = 0.0;
  std::size_t evaluations = 0;
  QuadStatus status = QuadStatus::ok;

  bool converged() const { return status == QuadStatus::ok; }
  double real() const { return value.real(); }
};

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  std::size_t max_evaluations = 4'000'000;
};

/// Adaptive Gauss-Kronrod (10/21) integration of a complex function.
/// Breakpoints seed the initial partition; infinite endpoints are mapped
/// onto finite ones. Panel values are summed by pairwise reduction in
/// left-to-right order, so results do not depend on the refinement order.
QuadratureResult integrate(const ComplexFn& f, const std::vector<double>& breakpoints,
                           const QuadOptions& opt = {});
QuadratureResult integrate(const ComplexFn& f, double a, double b, const QuadOptions& opt = {});

/// Integral of amplitude(x) * e(phase(x)) over [a, b], e(x) = exp(2 pi i x).
/// The interval is first split so that each panel carries at most about one
/// cycle of the phase, then refined adaptively.
QuadratureResult oscillatory_integral(const RealFn& phase, const ComplexFn& amplitude, double a,
                                      double b, double tol, std::size_t max_evaluations = 4'000'000);

/// Split [a, b] so that |phase(x_{k+1}) - phase(x_k)| <= cycles on each piece.
std::vector<double> phase_partition(const RealFn& phase, double a, double b, double cycles = 1.0,
                                    std::size_t max_pieces = 1'000'000);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

cplx pairwise_sum(const std::vector<cplx>& v);
double pairwise_sum(const std::vector<double>& v);

}  // namespace specpoint
