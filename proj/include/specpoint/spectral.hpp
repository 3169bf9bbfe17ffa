#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace specpoint {

using cplx = std::complex<double>;

enum class Parity { even, odd };

/// One level-1 Hecke-Maass cusp form: spectral parameter, parity, harmonic weight
/// |rho(1)|^2 / cosh(pi t) and Hecke eigenvalues lambda(1..nmax).
struct MaassForm {
  double t = 0.0;
  Parity parity = Parity::even;
  double omega = 0.0;
  std::vector<double> hecke;  // hecke[n], n = 1..nmax; hecke[0] unused

  int nmax() const { return hecke.empty() ? 0 : static_cast<int>(hecke.size()) - 1; }
  /// @throws std::out_of_range naming the form when n exceeds the table
  double lambda(std::int64_t n) const;
};

struct SpectrumManifest {
  std::string source;
  int nmax = 0;
  std::size_t count = 0;
  double tol = 0.0;
};

struct Spectrum {
  SpectrumManifest manifest;
  std::vector<MaassForm> forms;  // ascending t
};

class SpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the maass-spectrum v1 format:
///   #maass-spectrum v1 nmax=<N> tol=<eps>
///   t parity omega lambda(2) ... lambda(N)
/// Further lines starting with '#' are comments.
/// @throws SpectrumError with the line number, or naming the form and the failed identity
Spectrum parse_spectrum(std::istream& in, const std::string& source = "<stream>");
Spectrum load_spectrum(const std::string& path);
void write_spectrum(std::ostream& out, const Spectrum& s);

/// max over m n <= nmax of |lambda(m) lambda(n) - sum_{d | (m,n)} lambda(mn/d^2)|
double hecke_consistency(const MaassForm& f);

/// Hecke eigenvalues at n = p^k from lambda(p): lambda(p^{k+1}) = lambda(p) lambda(p^k) - lambda(p^{k-1}).
std::vector<double> prime_power_eigenvalues(double lambda_p, int kmax);

/// GL(3) Hecke-Maass form data: Langlands parameters and the first row A(1, n).
/// A(m, 1) = conj A(1, m); general A(m, n) comes from the Hecke relation
///   A(m, n) = sum_{d | (m,n)} mu(d) A(m/d, 1) A(1, n/d).
class GL3Form {
 public:
  GL3Form() = default;
  /// @throws std::invalid_argument unless the parameters sum to zero and row[1] = 1
  GL3Form(std::array<cplx, 3> langlands, std::vector<cplx> row, bool self_dual);

  const std::array<cplx, 3>& langlands() const { return langlands_; }
  bool self_dual() const { return self_dual_; }
  /// largest n with A(1, n) available
  std::int64_t row_limit() const { return static_cast<std::int64_t>(row_.size()) - 1; }

  /// @throws std::out_of_range when m or n exceeds row_limit (no extrapolation)
  cplx A(std::int64_t m, std::int64_t n) const;

  /// The same form with every coefficient conjugated (the dual form).
  GL3Form dual() const;

 private:
  std::array<cplx, 3> langlands_{};
  std::vector<cplx> row_;
  bool self_dual_ = false;
};

/// Symmetric-square lift: A(1, n) = sum_{d^2 m = n} lambda(m^2), parameters (2it, 0, -2it).
/// lambda(m^2) is assembled multiplicatively from lambda(p), p <= x_max.
/// @throws std::invalid_argument stating the required nmax when the GL(2) table is short
GL3Form sym_square_lift(const MaassForm& gl2, std::int64_t x_max);

/// (sum_{m^2 n <= X} |A(m,n)|^2) / X
double rankin_selberg_ratio(const GL3Form& f, std::int64_t X);

/// sum_{m <= X} sum_{n <= Y} |A(m,n)|^2
double coefficient_box_sum(const GL3Form& f, std::int64_t X, std::int64_t Y);

/// CSV rows m,n,re,im for m^2 n <= X; a leading comment carries the Langlands parameters.
void export_gl3_csv(std::ostream& out, const GL3Form& f, std::int64_t X);
/// Reads the first row back (m = 1 records; others are ignored) plus the parameter comment.
GL3Form import_gl3_csv(std::istream& in);

}  // namespace specpoint
