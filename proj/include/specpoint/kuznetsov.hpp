#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "specpoint/besselintegral.hpp"
#include "specpoint/sequence.hpp"
#include "specpoint/spectral.hpp"

namespace specpoint {

/// sum_j omega_j h(t_j; y) lambda_j(m) lambda_j(n).
/// tail_warning (optional) is set when the forms stop short of T + 6M.
/// @throws std::out_of_range naming the form when lambda_j(m) or lambda_j(n) is missing
double spectral_side(std::int64_t m, std::int64_t n, const SpectralWeight& sw, double y,
                     const std::vector<MaassForm>& forms, bool* tail_warning = nullptr);

/// Estimate of the omitted forms above the last one: Weyl density t/6, the largest
/// loaded omega, and |lambda(n)| <= tau(n) n^{7/64}.
double spectral_tail_bar(std::int64_t m, std::int64_t n, const SpectralWeight& sw,
                         const std::vector<MaassForm>& forms);

/// (1/pi) int omega(t) h(t; y) (n/m)^{it} sigma_{2it}(m) sigma_{-2it}(n) dt, omega(t) = |zeta(1+2it)|^{-2}.
/// The value is real; the imaginary part of the assembled integral is returned in im_part.
QuadratureResult eisenstein_side(std::int64_t m, std::int64_t n, const SpectralWeight& sw, double y,
                                 double tol = 1e-10, double* im_part = nullptr);

/// delta_{m,n} H with H = (1/pi^2) int h(t) tanh(pi t) t dt.
double diagonal_term(std::int64_t m, std::int64_t n, const SpectralWeight& sw, double tol = 1e-12);

struct KloostermanSide {
  double value = 0;
  double tail = 0;      // Weil bound on c > C_max with H linear in x
  double quad_err = 0;  // summed quadrature error estimates
  bool converged = true;
};

/// sum_{c <= C_max} S(m,n;c)/c H(4 pi sqrt(mn)/c, y), small-argument route for x < 1.
KloostermanSide kloosterman_side(std::int64_t m, std::int64_t n, const SpectralWeight& sw, double y,
                                 std::int64_t C_max, double tol = 1e-10);

struct TraceReport {
  std::int64_t m = 1, n = 1;
  double spectral = 0, eisenstein = 0, diagonal = 0, kloosterman = 0;
  double residual = 0;
  double spectral_tail = 0, c_tail = 0, quad_err = 0;
  bool tail_warning = false;
  std::size_t forms_used = 0;
  std::int64_t C_max = 0;
  double tol = 0;

  double dominant() const;
  double relative_residual() const { return residual / dominant(); }
  double error_bar() const { return spectral_tail + c_tail + quad_err; }
};

/// Both sides at y = sqrt(m/n).
TraceReport trace_residual(std::int64_t m, std::int64_t n, const SpectralWeight& sw,
                           const std::vector<MaassForm>& forms, std::int64_t C_max, double tol = 1e-10);

struct DecompositionReport {
  double S = 0, T_eis = 0, D = 0, P = 0;
  double residual = 0;
  double D_main = 0;          // (2/(pi sqrt pi)) M T ||a||^2
  double P_tail = 0;          // sum of |P_c| over the last computed moduli
  double spectral_tail = 0;   // bar for forms above the dataset
  std::int64_t c_used = 0;
  double relative_residual() const;
};

/// sum_c (1/c) sum_{m,n} a_m a_n S(m,n;c) H(4 pi sqrt(mn)/c, sqrt(m/n)) through the
/// I(v,w) representation with v = pi m/c, w = pi n/c. Moduli run to C_max when it is
/// positive, otherwise until v, w <= T/8 for every pair.
struct OffDiagonal {
  double value = 0;
  double tail = 0;
  std::int64_t c_used = 0;
  std::vector<double> per_c;  // P_c for c = 1..c_used
};
OffDiagonal offdiagonal_P(const Sequence& seq, const SpectralWeight& sw, std::int64_t C_max = 0);

/// S(A), T(A), D(A), P(A) for a real sequence.
/// @throws std::invalid_argument for complex sequences (the decomposition needs real a_n)
DecompositionReport decomposition(const Sequence& seq, const SpectralWeight& sw, const std::vector<MaassForm>& forms,
                                  double tol = 1e-10);

/// S(A) = sum_j omega_j h(t_j) |sum a_n lambda_j(n) n^{i t_j}|^2
double cusp_form_sum(const Sequence& seq, const SpectralWeight& sw, const std::vector<MaassForm>& forms);
/// T(A) = (1/pi) int omega(t) h(t) |sum a_n sigma_{2it}(n)|^2 dt
QuadratureResult eisenstein_sum(const Sequence& seq, const SpectralWeight& sw, double tol = 1e-10);

/// M T sum_{q <= qcap N/T} (1/q) int_{|t| <= 6.1/M} sum_{c <= ccap N/(T q)} (1/c)
///   sum*_alpha |sum_n a_n e(alpha^{-1} n / c) e(n t/(c q))|^2 dt,
/// with the t-integral and the alpha-sum done in closed form (sinc kernel and Ramanujan sums).
double p_bound_rhs(const Sequence& seq, const SpectralWeight& sw, double q_cap_const = 4.0, double c_cap_const = 4.0);

void write_trace_csv_header(std::ostream& out);
void write_trace_csv_row(std::ostream& out, const TraceReport& r, const SpectralWeight& sw);

}  // namespace specpoint
