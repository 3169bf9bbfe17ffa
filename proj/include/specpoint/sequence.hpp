#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace specpoint {

using cplx = std::complex<double>;

/// Coefficients a_n supported on the dyadic block (N, 2N]; a[k] holds a_{N+1+k}.
struct Sequence {
  std::int64_t N = 1;
  std::vector<cplx> a;
  bool real = true;

  Sequence() = default;
  /// zero sequence on (N, 2N]
  explicit Sequence(std::int64_t N_, bool real_ = true);

  std::int64_t first() const { return N + 1; }
  std::int64_t last() const { return 2 * N; }
  cplx operator()(std::int64_t n) const;
  void set(std::int64_t n, cplx v);
  double norm2() const;  // sum |a_n|^2
  bool is_zero() const;
  Sequence scaled(cplx k) const;
  /// R[k] = sum_n a_{n+k} conj(a_n), k = 0..N-1
  std::vector<cplx> autocorrelation() const;

  /// Seeded draw: uniform on [-1, 1] when real, uniform on the unit disk otherwise.
  static Sequence random(std::int64_t N, std::uint64_t seed, bool real);
};

}  // namespace specpoint
