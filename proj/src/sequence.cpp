#include "specpoint/sequence.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace specpoint {

Sequence::Sequence(std::int64_t N_, bool real_) : N(N_), a(static_cast<std::size_t>(N_), 0.0), real(real_) {
  if (N_ < 1) throw std::invalid_argument("Sequence: N must be >= 1");
}

cplx Sequence::operator()(std::int64_t n) const {
  if (n <= N || n > 2 * N) return 0.0;
  return a[static_cast<std::size_t>(n - N - 1)];
}

void Sequence::set(std::int64_t n, cplx v) {
  if (n <= N || n > 2 * N) throw std::out_of_range("Sequence::set: n = " + std::to_string(n) + " outside (N, 2N]");
  if (real && v.imag() != 0.0) throw std::invalid_argument("Sequence::set: complex value in a real sequence");
  a[static_cast<std::size_t>(n - N - 1)] = v;
}

double Sequence::norm2() const {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

bool Sequence::is_zero() const {
  for (const auto& v : a)
    if (v != 0.0) return false;
  return true;
}

Sequence Sequence::scaled(cplx k) const {
  Sequence s = *this;
  for (auto& v : s.a) v *= k;
  if (k.imag() != 0.0) s.real = false;
  return s;
}

std::vector<cplx> Sequence::autocorrelation() const {
  std::vector<cplx> R(a.size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t i = 0; i + k < a.size(); ++i) R[k] += a[i + k] * std::conj(a[i]);
  return R;
}

Sequence Sequence::random(std::int64_t N, std::uint64_t seed, bool real) {
  Sequence s(N, real);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& v : s.a) {
    if (real) {
      v = 2.0 * u(rng) - 1.0;
    } else {
      const double r = std::sqrt(u(rng)), th = 2.0 * std::numbers::pi * u(rng);
      v = std::polar(r, th);
    }
  }
  return s;
}

}  // namespace specpoint
