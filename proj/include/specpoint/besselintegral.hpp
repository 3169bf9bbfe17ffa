#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "specpoint/quadrature.hpp"

namespace specpoint {

/// Gaussian spectral window h(t) = beta((t-T)/M) + beta((t+T)/M), beta(r) = exp(-r^2).
struct SpectralWeight {
  double T = 50.0;
  double M = 8.0;

  /// @throws std::invalid_argument unless T > 0 and 1 <= M <= T
  void validate() const;
  /// @throws std::invalid_argument unless T^0.05 <= M <= T^0.95
  void validate_asymptotic() const;
};

double weight_h(double t, const SpectralWeight& sw);
/// h(t) cos(2 t log y)
double weight_h_y(double t, double y, const SpectralWeight& sw);

/// Half-width of the t-window outside which h < tol (relative to its peak).
double weight_halfwidth(const SpectralWeight& sw, double tol);

/// H(x, y) = (4/pi^2) int_0^inf t h(t; y) tanh(pi t) B(t, x) dt with B from mehler_sonine_kernel.
/// tanh is replaced by 1 only for t > 12. Status out_of_regime for x < 1.
QuadratureResult bessel_H_direct(double x, double y, const SpectralWeight& sw, double tol = 1e-10);

/// Small-argument route: H(x, y) = -(4/pi) int_0^inf Im J_{2it}(x) h(t; y) t / cosh(pi t) dt,
/// with J from its power series. Intended for x < 1.
QuadratureResult bessel_H_small(double x, double y, const SpectralWeight& sw, double tol = 1e-12);

/// Dispatches to the small-argument route for x < 1 and to the direct route otherwise.
QuadratureResult bessel_H(double x, double y, const SpectralWeight& sw, double tol = 1e-10);

/// (2/(pi sqrt pi)) (2 beta(M r) cos(2 T r) + (M/T) beta'(M r) sin(2 T r))
double g_weight(double r, const SpectralWeight& sw);

/// (e^r - 1, 1 - e^{-r}), evaluated with expm1.
std::pair<double, double> rho_pm(double r);

/// r-cut for I(v, w): the larger of 6.1/M and the point where M T |g| drops below tol.
double I_cutoff(const SpectralWeight& sw, double tol);

/// I(v, w) = M T int_{|r| <= R} g(r) exp(2i (v rho_+(r) - w rho_-(r))) dr, R = I_cutoff.
QuadratureResult I_integral(double v, double w, const SpectralWeight& sw, double tol = 1e-10);

/// Re{exp(2i(v+w)) I(v, w)} with v = xy/4, w = x/(4y).
QuadratureResult H_asymptotic(double x, double y, const SpectralWeight& sw, double tol = 1e-10);

/// H = (1/pi^2) int h(t) tanh(pi t) t dt by quadrature.
QuadratureResult diagonal_H(const SpectralWeight& sw, double tol = 1e-12);
/// (2/(pi sqrt pi)) M T
double diagonal_H_main_term(const SpectralWeight& sw);

struct BesselCompareReport {
  double x = 0, y = 0;
  double H_direct = 0, H_asymptotic = 0;
  double abs_residual = 0, rel_residual = 0;
  double quadrature_err = 0;
  bool converged = true;
};

BesselCompareReport compare_H_asymptotic(double x, double y, const SpectralWeight& sw, double tol = 1e-10);

void write_bessel_csv_header(std::ostream& out);
void write_bessel_csv_row(std::ostream& out, const BesselCompareReport& r, const SpectralWeight& sw);

struct SmallxRow {
  double u = 0;
  double max_abs_H = 0;
  double argmax_y = 1;
  double quadrature_err = 0;
};

/// For each u, max over y in a geometric sample of [1, y_max] of |H(x, y)| with x = u / (y + 1/y).
std::vector<SmallxRow> smallx_decay_scan(const SpectralWeight& sw, const std::vector<double>& u_grid,
                                         int y_samples = 8, double y_max = 8.0);

}  // namespace specpoint
