#include "specpoint/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace specpoint::arith {

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i64 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

i64 mod(i64 a, i64 c) {
  i64 r = a % c;
  return r < 0 ? r + c : r;
}

std::optional<i64> mod_inverse(i64 a, i64 c) {
  if (c < 1) return std::nullopt;
  if (c == 1) return 0;
  i64 r0 = c, r1 = mod(a, c);
  i64 s0 = 0, s1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    i64 s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) return std::nullopt;
  return mod(s0, c);
}

std::complex<double> e_frac(i64 k, i64 c) {
  const i64 r = mod(k, c);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(c);
  return {std::cos(angle), std::sin(angle)};
}

ResidueTable::ResidueTable(i64 c) : c_(c) {
  if (c < 1) throw std::invalid_argument("ResidueTable: modulus must be >= 1");
  roots_.resize(static_cast<std::size_t>(c));
  for (i64 k = 0; k < c; ++k) roots_[static_cast<std::size_t>(k)] = e_frac(k, c);
  for (i64 a = 0; a < c; ++a) {
    if (auto inv = mod_inverse(a, c)) {
      units_.push_back(a);
      inverses_.push_back(*inv);
    }
  }
}

ExpSumValue ResidueTable::kloosterman(i64 m, i64 n) const {
  const i64 mr = mod(m, c_), nr = mod(n, c_);
  ExpSumValue sum = 0.0;
  for (std::size_t j = 0; j < units_.size(); ++j) {
    // products stay below c^2, fine for c up to ~3e9
    const i64 k = (units_[j] * mr + inverses_[j] * nr) % c_;
    sum += roots_[static_cast<std::size_t>(k)];
  }
  return sum;
}

ExpSumValue kloosterman(i64 m, i64 n, i64 c) { return ResidueTable(c).kloosterman(m, n); }

ExpSumValue vq_sum(i64 q, i64 m, i64 n, i64 c) {
  if (c < 1) throw std::invalid_argument("vq_sum: modulus must be >= 1");
  if (c == 1) return 1.0;
  ExpSumValue sum = 0.0;
  const i64 mr = mod(m, c), nr = mod(n, c);
  for (i64 a = 0; a < c; ++a) {
    auto ia = mod_inverse(a, c);
    if (!ia) continue;
    auto ib = mod_inverse(q - a, c);
    if (!ib) continue;
    sum += e_frac((*ia * mr + *ib * nr) % c, c);
  }
  return sum;
}

double factorization_identity_residual(i64 m, i64 n, i64 c) {
  const ExpSumValue lhs = kloosterman(m, n, c) * e_frac(m + n, c);
  ExpSumValue rhs = 0.0;
  for (i64 q : divisors(c)) rhs += vq_sum(q, m, n, c / q);
  return std::abs(lhs - rhs);
}

std::vector<double> factorization_identity_table(i64 c) {
  if (c < 1) throw std::invalid_argument("factorization_identity_table: modulus must be >= 1");
  using Mat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const ResidueTable tab(c);
  const auto phi = static_cast<Eigen::Index>(tab.units().size());
  Mat P(c, phi), Q(c, phi);
  for (i64 m = 0; m < c; ++m)
    for (Eigen::Index j = 0; j < phi; ++j) {
      P(m, j) = tab.root(m * (tab.units()[static_cast<std::size_t>(j)] + 1));
      Q(m, j) = tab.root(m * (tab.inverses()[static_cast<std::size_t>(j)] + 1));
    }
  Mat diff = P * Q.transpose();
  for (i64 q : divisors(c)) {
    const i64 r = c / q;
    std::vector<std::pair<i64, i64>> pts;
    for (i64 a = 0; a < r; ++a) {
      auto ia = mod_inverse(a, r);
      auto ib = mod_inverse(q - a, r);
      if (ia && ib) pts.emplace_back(*ia, *ib);
    }
    const ResidueTable rt(r);
    Mat U(r, static_cast<Eigen::Index>(pts.size())), W(r, static_cast<Eigen::Index>(pts.size()));
    for (i64 m = 0; m < r; ++m)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        U(m, static_cast<Eigen::Index>(j)) = rt.root(m * pts[j].first);
        W(m, static_cast<Eigen::Index>(j)) = rt.root(m * pts[j].second);
      }
    const Mat V = U * W.transpose();
    // V_q(., .; r) is r-periodic in both arguments
    for (i64 m = 0; m < c; ++m)
      for (i64 n = 0; n < c; ++n) diff(m, n) -= V(m % r, n % r);
  }
  std::vector<double> out(static_cast<std::size_t>(c * c));
  for (i64 m = 0; m < c; ++m)
    for (i64 n = 0; n < c; ++n) out[static_cast<std::size_t>(m * c + n)] = std::abs(diff(m, n));
  return out;
}

double weil_ratio(i64 m, i64 n, i64 c) {
  const i64 g = gcd(gcd(m, n), c);
  const double denom = static_cast<double>(divisor_count(c)) * std::sqrt(static_cast<double>(g)) *
                       std::sqrt(static_cast<double>(c));
  return std::abs(kloosterman(m, n, c)) / denom;
}

std::complex<double> divisor_sigma(std::complex<double> nu, i64 n) {
  if (n < 1) throw std::invalid_argument("divisor_sigma: n must be >= 1");
  std::complex<double> sum = 0.0;
  for (i64 d : divisors(n)) sum += std::exp(nu * std::log(static_cast<double>(d)));
  return sum;
}

namespace {

std::mutex g_factor_mutex;
std::map<i64, std::vector<std::pair<i64, int>>> g_factor_cache;

std::vector<std::pair<i64, int>> trial_division(i64 n) {
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  if (n < 4096) return trial_division(n);
  std::lock_guard<std::mutex> lock(g_factor_mutex);
  auto it = g_factor_cache.find(n);
  if (it != g_factor_cache.end()) return it->second;
  auto f = trial_division(n);
  if (g_factor_cache.size() < 200000) g_factor_cache.emplace(n, f);
  return f;
}

Multiplicative multiplicative_basics(i64 n) {
  Multiplicative out;
  out.factors = factorize(n);
  for (auto [p, e] : out.factors) {
    out.tau *= e + 1;
    i64 pk = 1;
    for (int k = 1; k < e; ++k) pk *= p;
    out.phi *= pk * (p - 1);
    out.mu = (e > 1) ? 0 : -out.mu;
  }
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int moebius(i64 n) { return multiplicative_basics(n).mu; }
i64 euler_phi(i64 n) { return multiplicative_basics(n).phi; }
i64 divisor_count(i64 n) { return multiplicative_basics(n).tau; }

i64 ramanujan_sum(i64 q, i64 k) {
  // c_q(k) = sum_{d | (q,k)} mu(q/d) d
  const i64 g = gcd(q, k == 0 ? q : k);
  i64 s = 0;
  for (i64 d : divisors(g)) s += moebius(q / d) * d;
  return s;
}

}  // namespace specpoint::arith
