#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "specpoint/besselintegral.hpp"
#include "specpoint/sequence.hpp"
#include "specpoint/spectral.hpp"

namespace specpoint {

struct SieveReport {
  std::string kind;
  double lhs = 0, rhs = 0, ratio = 0;
  double T = 0, M = 0;
  std::int64_t N = 0;
  double gamma = 0, tau = 0, v = 0;
  std::int64_t C = 0;
  std::uint64_t seed = 0;
};

/// int_{-tau}^{tau} sum_{c <= C} (1/c) sum*_alpha |sum_n a_n e(alpha n/c) e(n^gamma t/(c v))|^2 dt.
/// The t-integral and the alpha-sum are done in closed form: the sum over units gives the
/// Ramanujan sum c_c(m - n), the integral gives 2 tau sinc(2 pi (m^gamma - n^gamma) tau/(c v)).
/// @throws std::invalid_argument unless gamma != 0, tau > 0, v > 0, C >= 1
double young_ls_lhs(const Sequence& seq, double gamma, double tau, double v, std::int64_t C);

/// lhs over (tau C + v N^{1-gamma} max(log C, 1)) ||a||^2
SieveReport young_ls_ratio(const Sequence& seq, double gamma, double tau, double v, std::int64_t C);

/// sum over T < t_j <= T + M of omega_j |sum a_n lambda_j(n) n^{i t_j}|^2 against M (T + N) ||a||^2.
/// @throws std::out_of_range when a form in the window lacks lambda_j(2N)
SieveReport corollary_ratio(const Sequence& seq, const SpectralWeight& sw, const std::vector<MaassForm>& forms);

/// int_{-T}^{T} |sum a_n n^{it}|^2 dt against (2T + N) ||a||^2, in closed form.
SieveReport dirichlet_poly_ratio(const Sequence& seq, double T);

/// Sum over t_j <= T against (T^2 + N^2) ||a||^2 and (T^2 + T^{3/2} N^{1/2} + N^{5/4}) ||a||^2,
/// with N the top of the support, 2N.
struct DiLuoRow {
  double lhs = 0;
  double rhs_first = 0, rhs_second = 0;
  double ratio_first = 0, ratio_second = 0;
  std::size_t forms_used = 0;
};
/// @throws std::invalid_argument when the dataset stops below T
DiLuoRow di_luo_comparison(const Sequence& seq, double T, const std::vector<MaassForm>& forms);

struct MomentReport {
  double S = 0, T_eis = 0;
  double majorant = 0, ratio = 0;
  double coeff_norm = 0;  // sum_{N < n <= 2N} |A(n1, n)|^2
  double quad_err = 0;
};

/// S(n1; N) = sum_j omega_j h(t_j) |N^{-1/2} sum_n A(n1, n) lambda_j(n) n^{-i t_j} w(n/N)|^2 and
/// T(n1; N) = (1/pi) int omega(t) h(t) |N^{-1/2} sum_n A(n1, n) sigma_{-2it}(n) w(n/N)|^2 dt,
/// n over (N, 2N], w a smooth bump on [1, 2]. The majorant is
/// (1 + M T/N) sum |A(n1, n)|^2 + (n1 + T/M^2) N n1.
/// @throws std::out_of_range when A(n1, 2N) or lambda_j(2N) is missing
MomentReport moment_demo(const GL3Form& f, const std::vector<MaassForm>& forms, const SpectralWeight& sw,
                         std::int64_t N, std::int64_t n1, double tol = 1e-10);

struct SuiteSummary {
  std::vector<SieveReport> rows;
  double max_young = 0, max_corollary = 0, max_dirichlet = 0;
  double max_diluo_first = 0, max_diluo_second = 0;
};

/// Seeds seed0 .. seed0 + trials - 1 for each N: Young (gamma = 1, tau = 6.1/M, v = 1,
/// C = ceil(4N/T)), Corollary, Dirichlet-polynomial and both Di/Luo ratios.
/// Rows come out ordered by N, then seed, then kind.
SuiteSummary sieve_suite(const std::vector<std::int64_t>& Ns, int trials, std::uint64_t seed0, const SpectralWeight& sw,
                         const std::vector<MaassForm>& forms);

void write_sieve_csv_header(std::ostream& out);
void write_sieve_csv_row(std::ostream& out, const SieveReport& r);
void write_suite_summary(std::ostream& out, const SuiteSummary& s);

}  // namespace specpoint
