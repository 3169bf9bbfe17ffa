#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace specpoint::arith {

using i64 = std::int64_t;
using ExpSumValue = std::complex<double>;

i64 gcd(i64 a, i64 b);
i64 mod(i64 a, i64 c);  // representative in [0, c)

// Inverse of a modulo c; nullopt when gcd(a, c) != 1. For c = 1 the inverse is 0.
std::optional<i64> mod_inverse(i64 a, i64 c);

// e(k/c) = exp(2 pi i k / c), with k reduced modulo c first.
std::complex<double> e_frac(i64 k, i64 c);

/// Roots of unity, units and their inverses for a fixed modulus.
/// Building one of these amortizes the setup when many sums share c.
class ResidueTable {
 public:
  explicit ResidueTable(i64 c);

  i64 modulus() const { return c_; }
  const std::vector<i64>& units() const { return units_; }
  const std::vector<i64>& inverses() const { return inverses_; }
  std::complex<double> root(i64 k) const { return roots_[static_cast<std::size_t>(mod(k, c_))]; }

  ExpSumValue kloosterman(i64 m, i64 n) const;

 private:
  i64 c_;
  std::vector<i64> units_;
  std::vector<i64> inverses_;  // inverses_[j] is the inverse of units_[j]
  std::vector<std::complex<double>> roots_;
};

// S(m,n;c) = sum over units alpha mod c of e((alpha m + alpha^{-1} n)/c).
ExpSumValue kloosterman(i64 m, i64 n, i64 c);

// V_q(m,n;c) = sum over alpha mod c with (alpha (q - alpha), c) = 1 of
// e((alpha^{-1} m + (q - alpha)^{-1} n)/c).
ExpSumValue vq_sum(i64 q, i64 m, i64 n, i64 c);

// |S(m,n;c) e((m+n)/c) - sum_{qr=c} V_q(m,n;r)|
double factorization_identity_residual(i64 m, i64 n, i64 c);

// The same residual for every residue pair, row-major c x c with entry [m * c + n].
// Both sides are assembled as products of root-of-unity matrices.
std::vector<double> factorization_identity_table(i64 c);

// |S(m,n;c)| / (tau(c) sqrt(gcd(m,n,c)) sqrt(c)), with gcd(0, x) = x.
double weil_ratio(i64 m, i64 n, i64 c);

// sigma_nu(n) = sum_{d | n} d^nu
std::complex<double> divisor_sigma(std::complex<double> nu, i64 n);

struct Multiplicative {
  i64 tau = 1;
  i64 phi = 1;
  int mu = 1;
  std::vector<std::pair<i64, int>> factors;  // (prime, exponent), ascending
};

Multiplicative multiplicative_basics(i64 n);
std::vector<std::pair<i64, int>> factorize(i64 n);
std::vector<i64> divisors(i64 n);  // ascending
int moebius(i64 n);
i64 euler_phi(i64 n);
i64 divisor_count(i64 n);

// Ramanujan sum c_q(k) = sum over units alpha mod q of e(alpha k / q).
i64 ramanujan_sum(i64 q, i64 k);

}  // namespace specpoint::arith
