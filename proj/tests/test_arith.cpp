#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "specpoint/arith.hpp"

using namespace specpoint::arith;

namespace {

using cld = std::complex<long double>;

cld e_ld(long double x) {
  x -= std::floor(x);
  const long double a = 2.0L * 3.141592653589793238462643383279502884L * x;
  return {std::cos(a), std::sin(a)};
}

// Enumerate over beta = alpha^{-1} and invert by brute-force search.
cld kloosterman_by_inverse(i64 m, i64 n, i64 c) {
  cld s = 0.0L;
  for (i64 b = 0; b < c; ++b) {
    if (gcd(b, c) != 1) continue;
    i64 inv = 0;
    while (c > 1 && (inv * b) % c != 1) ++inv;
    s += e_ld(static_cast<long double>(mod(inv * m + b * n, c)) / c);
  }
  return s;
}

cld vq_brute(i64 q, i64 m, i64 n, i64 c) {
  if (c == 1) return 1.0L;
  cld s = 0.0L;
  for (i64 a = 0; a < c; ++a) {
    if (gcd(mod(a * (q - a), c), c) != 1) continue;
    i64 ia = 0, ib = 0;
    while ((ia * a) % c != 1) ++ia;
    while ((ib * mod(q - a, c)) % c != 1) ++ib;
    s += e_ld(static_cast<long double>(mod(ia * m + ib * n, c)) / c);
  }
  return s;
}

}  // namespace

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(1, 2).value() == 1);
  CHECK(mod_inverse(2, 5).value() == 3);
  CHECK(mod_inverse(7, 1).value() == 0);
  CHECK_FALSE(mod_inverse(4, 6).has_value());
  CHECK(mod_inverse(-3, 7).value() == 2);
  for (i64 c = 2; c < 200; ++c)
    for (i64 a = 0; a < c; ++a)
      if (auto inv = mod_inverse(a, c)) CHECK(mod(a * *inv, c) == 1);
}

TEST_CASE("kloosterman examples") {
  for (i64 c = 1; c <= 40; ++c) CHECK(kloosterman(0, 0, c).real() == doctest::Approx(euler_phi(c)));
  CHECK(std::abs(kloosterman(1, 1, 2) - 1.0) < 1e-14);
  CHECK(std::abs(kloosterman(1, 1, 3) + 1.0) < 1e-14);
  CHECK(std::abs(kloosterman(5, 9, 1) - 1.0) < 1e-15);
}

TEST_CASE("kloosterman agrees with an independent enumeration order") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<i64> mn(-300, 300), cd(1, 300);
  for (int trial = 0; trial < 400; ++trial) {
    const i64 m = mn(rng), n = mn(rng), c = cd(rng);
    const cld ref = kloosterman_by_inverse(m, n, c);
    const auto got = kloosterman(m, n, c);
    CHECK(std::abs(static_cast<long double>(got.real()) - ref.real()) < 1e-12L);
    CHECK(std::abs(static_cast<long double>(got.imag()) - ref.imag()) < 1e-12L);
    CHECK(std::abs(got.imag()) <= 1e-10 * (1.0 + std::abs(got.real())));
  }
}

TEST_CASE("kloosterman and V_q symmetry") {
  for (i64 c = 1; c <= 60; ++c)
    for (i64 m = 0; m <= 12; ++m)
      for (i64 n = 0; n <= 12; ++n) {
        CHECK(std::abs(kloosterman(m, n, c) - kloosterman(n, m, c)) < 1e-12);
        if (c % 7 == 0 || c < 10)
          for (i64 q = 1; q <= 4; ++q) CHECK(std::abs(vq_sum(q, m, n, c) - vq_sum(q, n, m, c)) < 1e-12);
      }
}

TEST_CASE("vq_sum examples") {
  CHECK(std::abs(vq_sum(5, 3, 4, 1) - 1.0) < 1e-15);
  CHECK(std::abs(vq_sum(1, 0, 0, 2)) < 1e-15);
  for (i64 c = 1; c <= 30; ++c)
    for (i64 q = 1; q <= 6; ++q) {
      const cld ref = vq_brute(q, 1, 2, c);
      const auto got = vq_sum(q, 1, 2, c);
      CHECK(std::abs(cld(got.real(), got.imag()) - ref) < 1e-12L);
    }
  const cld ref = vq_brute(2, 1, 1, 3);
  CHECK(std::abs(cld(vq_sum(2, 1, 1, 3).real(), vq_sum(2, 1, 1, 3).imag()) - ref) < 1e-14L);
}

TEST_CASE("factorization identity") {
  CHECK(factorization_identity_residual(3, 4, 1) < 1e-12);
  CHECK(factorization_identity_residual(1, 1, 6) < 1e-12);
  // S(1,1;6) e(2/6) = -e(1/3): S(1,1;6) = -1
  CHECK(std::abs(kloosterman(1, 1, 6) + 1.0) < 1e-13);
  for (i64 c = 1; c <= 120; c += 7)
    for (i64 m = 1; m <= 9; m += 2)
      for (i64 n = 1; n <= 9; n += 3) CHECK(factorization_identity_residual(m, n, c) < 1e-10);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<i64> mn(1, 500), cd(1, 500);
  for (int k = 0; k < 60; ++k) CHECK(factorization_identity_residual(mn(rng), mn(rng), cd(rng)) < 1e-10);
}

TEST_CASE("weil ratio") {
  CHECK(weil_ratio(1, 1, 3) == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(weil_ratio(1, 1, 2) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
  for (i64 c = 1; c <= 200; ++c) {
    CHECK(weil_ratio(0, 0, c) == doctest::Approx(static_cast<double>(euler_phi(c)) / (divisor_count(c) * c)));
    for (i64 m = 1; m <= 20; ++m)
      for (i64 n = 1; n <= 20; n += 3) CHECK(weil_ratio(m, n, c) <= 1.0 + 1e-12);
  }
}

TEST_CASE("divisor functions") {
  CHECK(divisor_sigma(0.0, 6).real() == doctest::Approx(4.0));
  CHECK(divisor_sigma(1.0, 6).real() == doctest::Approx(12.0));
  CHECK(std::abs(divisor_sigma({0.0, 2.0}, 1) - 1.0) < 1e-15);
  const auto s = divisor_sigma({0.0, 0.7}, 12);
  std::complex<double> ref = 0.0;
  for (int d : {1, 2, 3, 4, 6, 12}) ref += std::pow(static_cast<double>(d), std::complex<double>(0.0, 0.7));
  CHECK(std::abs(s - ref) < 1e-13);
}

TEST_CASE("multiplicative basics") {
  auto one = multiplicative_basics(1);
  CHECK(one.tau == 1);
  CHECK(one.phi == 1);
  CHECK(one.mu == 1);
  CHECK(one.factors.empty());
  auto m12 = multiplicative_basics(12);
  CHECK(m12.tau == 6);
  CHECK(m12.phi == 4);
  CHECK(m12.mu == 0);
  REQUIRE(m12.factors.size() == 2);
  CHECK(m12.factors[0] == std::pair<i64, int>{2, 2});
  CHECK(m12.factors[1] == std::pair<i64, int>{3, 1});
  auto m30 = multiplicative_basics(30);
  CHECK(m30.tau == 8);
  CHECK(m30.phi == 8);
  CHECK(m30.mu == -1);
  for (i64 n = 1; n < 500; ++n) {
    i64 tau = 0, phi = 0;
    for (i64 d = 1; d <= n; ++d) {
      if (n % d == 0) ++tau;
      if (gcd(d, n) == 1) ++phi;
    }
    CHECK(divisor_count(n) == tau);
    CHECK(euler_phi(n) == phi);
  }
}

TEST_CASE("ramanujan sums") {
  for (i64 q = 1; q <= 40; ++q)
    for (i64 k = -20; k <= 20; ++k) {
      std::complex<double> s = 0.0;
      for (i64 a = 0; a < q; ++a)
        if (gcd(a, q) == 1) s += e_frac(a * k, q);
      CHECK(std::abs(s - static_cast<double>(ramanujan_sum(q, k))) < 1e-11);
    }
}

TEST_CASE("quadratic form bound") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (i64 N : {8, 32, 64}) {
    std::vector<std::complex<double>> a(static_cast<std::size_t>(N));
    for (auto& v : a) v = {u(rng), u(rng)};
    double norm2 = 0.0;
    for (auto v : a) norm2 += std::norm(v);
    for (i64 c = 1; c <= 100; c += 9) {
      ResidueTable tab(c);
      std::complex<double> q = 0.0;
      for (i64 m = 0; m < N; ++m)
        for (i64 n = 0; n < N; ++n)
          q += a[static_cast<std::size_t>(m)] * std::conj(a[static_cast<std::size_t>(n)]) *
               tab.kloosterman(N + 1 + m, N + 1 + n);
      const double tau = static_cast<double>(divisor_count(c));
      CHECK(std::abs(q) <= tau * tau * std::sqrt(static_cast<double>(c)) * N * norm2);
    }
  }
}

TEST_CASE("factorization identity table matches pointwise residuals") {
  for (i64 c : {1, 2, 12, 37, 60}) {
    const auto t = factorization_identity_table(c);
    REQUIRE(t.size() == static_cast<std::size_t>(c * c));
    for (i64 m = 0; m < c; ++m)
      for (i64 n = 0; n < c; ++n) {
        CHECK(t[static_cast<std::size_t>(m * c + n)] < 1e-12);
        if ((m + n) % 5 == 0) CHECK(std::abs(t[static_cast<std::size_t>(m * c + n)] - factorization_identity_residual(m, n, c)) < 1e-12);
      }
  }
  CHECK_THROWS_AS(factorization_identity_table(0), std::invalid_argument);
}
