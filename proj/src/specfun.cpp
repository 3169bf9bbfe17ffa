#include "specpoint/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace specpoint {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kLanczos[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cplx log_gamma_right(cplx z) {
  // Re z >= 1/2
  const cplx z1 = z - 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z1 + static_cast<double>(i));
  const cplx t = z1 + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z1 + 0.5) * std::log(t) - t + std::log(x);
}

// B_{2k}/(2k)! for k = 1..kMaxK, via (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}
constexpr int kMaxK = 40;

const std::vector<long double>& bernoulli_ratios() {
  static const std::vector<long double> table = [] {
    std::vector<long double> c(kMaxK + 1, 0.0L);
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int k = 1; k <= kMaxK; ++k) {
      long double z2k;
      switch (k) {
        case 1: z2k = pi * pi / 6.0L; break;
        case 2: z2k = std::pow(pi, 4) / 90.0L; break;
        case 3: z2k = std::pow(pi, 6) / 945.0L; break;
        case 4: z2k = std::pow(pi, 8) / 9450.0L; break;
        case 5: z2k = std::pow(pi, 10) / 93555.0L; break;
        default: {
          z2k = 0.0L;
          for (int n = 80; n >= 1; --n) z2k += std::pow(static_cast<long double>(n), -2.0L * k);
        }
      }
      const long double sgn = (k % 2 == 1) ? 1.0L : -1.0L;
      c[k] = sgn * 2.0L * z2k / std::pow(2.0L * pi, 2.0L * k);
    }
    return c;
  }();
  return table;
}

}  // namespace

cplx e(double x) {
  const double r = x - std::floor(x);
  const double a = 2.0 * kPi * r;
  return {std::cos(a), std::sin(a)};
}

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("log_gamma: pole at non-positive integer");
  if (z.real() >= 0.5) return log_gamma_right(z);
  const int n = static_cast<int>(std::ceil(0.5 - z.real()));
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k) acc += std::log(z + static_cast<double>(k));
  return log_gamma_right(z + static_cast<double>(n)) - acc;
}

cplx zeta(cplx s, ZetaOrder order) {
  if (s.real() < 1.0) throw std::domain_error("zeta: only Re s >= 1 is supported");
  if (s == cplx(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
  const int K = order.K > 0 ? std::min(order.K, kMaxK) : 20;
  int N = order.N;
  if (N <= 0) N = std::max(12, static_cast<int>(std::ceil(3.0 * std::abs(s + 2.0 * K) / (2.0 * kPi))) + 1);

  using ld = long double;
  const ld sr = s.real(), si = s.imag();
  const ld two_pi = 6.283185307179586476925286766559005768L;
  auto pow_minus_s = [&](ld n) {
    const ld ln = std::log(n);
    const ld mag = std::exp(-sr * ln);
    ld ang = std::fmod(-si * ln, two_pi);
    return std::complex<ld>(mag * std::cos(ang), mag * std::sin(ang));
  };
  std::complex<ld> sum = 0.0L;
  for (int n = N - 1; n >= 1; --n) sum += pow_minus_s(static_cast<ld>(n));
  const std::complex<ld> sl(sr, si);
  const std::complex<ld> Nms = pow_minus_s(static_cast<ld>(N));
  const ld Nl = static_cast<ld>(N);
  sum += Nms * Nl / (sl - 1.0L) + 0.5L * Nms;
  const auto& c = bernoulli_ratios();
  std::complex<ld> poch = sl;  // s (s+1) ... (s + 2k - 2)
  ld Npow = 1.0L / Nl;         // N^{-(2k-1)}
  for (int k = 1; k <= K; ++k) {
    sum += c[k] * poch * Nms * Npow;
    poch *= (sl + static_cast<ld>(2 * k - 1)) * (sl + static_cast<ld>(2 * k));
    Npow /= Nl * Nl;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

cplx bessel_j_series(cplx nu, double x, double log_scale) {
  if (!(x > 0.0)) throw std::invalid_argument("bessel_j_series: x must be positive");
  const cplx L0 = nu * std::log(0.5 * x) - log_gamma(nu + 1.0) - log_scale;
  const double q = 0.25 * x * x;
  cplx term = 1.0, sum = 1.0;
  double biggest = 1.0;
  for (int k = 1; k < 10000; ++k) {
    term *= -q / (static_cast<double>(k) * (static_cast<double>(k) + nu));
    sum += term;
    biggest = std::max(biggest, std::abs(term));
    if (std::abs(term) < 1e-18 * biggest && static_cast<double>(k) > 0.5 * x) break;
  }
  return std::exp(L0) * sum;
}

QuadratureResult mehler_sonine_kernel(double t, double x, double tol) {
  if (!(x > 0.0)) throw std::invalid_argument("mehler_sonine_kernel: x must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("mehler_sonine_kernel: tol must be positive");
  t = std::abs(t);
  const double theta0 = std::min(kPi / 3.0, 2.0 / (1.0 + 2.0 * t));
  const double st = std::sin(theta0), ct = std::cos(theta0);
  const double amp = std::cosh(2.0 * t * theta0);

  // horizontal cut where 2 amp exp(-x sinh S sin theta0) / (x cosh S sin theta0) < tol/8
  double S = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double tail = 2.0 * amp * std::exp(-x * std::sinh(S) * st) / (x * std::cosh(S) * st);
    if (tail < tol / 8.0) break;
    S += 0.25;
  }

  const double piece_tol = tol / 8.0;
  // vertical leg r = i theta: e^{i x cos theta} cosh(2 t theta) i dtheta
  QuadratureResult vert = oscillatory_integral(
      [x](double th) { return x * std::cos(th) / (2.0 * kPi); },
      [t](double th) { return cplx(0.0, std::cosh(2.0 * t * th)); }, 0.0, theta0, piece_tol);
  // horizontal leg r = s + i theta0, with cos(2 t r) split into its two exponentials
  QuadratureResult hp = oscillatory_integral(
      [x, ct, t](double s) { return (x * std::cosh(s) * ct + 2.0 * t * s) / (2.0 * kPi); },
      [x, st, t, theta0](double s) { return cplx(0.5 * std::exp(-x * std::sinh(s) * st - 2.0 * t * theta0), 0.0); },
      0.0, S, piece_tol);
  QuadratureResult hm = oscillatory_integral(
      [x, ct, t](double s) { return (x * std::cosh(s) * ct - 2.0 * t * s) / (2.0 * kPi); },
      [x, st, t, theta0](double s) { return cplx(0.5 * std::exp(-x * std::sinh(s) * st + 2.0 * t * theta0), 0.0); },
      0.0, S, piece_tol);

  QuadratureResult out;
  const cplx F = 2.0 * (vert.value + hp.value + hm.value);
  out.value = F.real();
  out.err_estimate = 2.0 * (vert.err_estimate + hp.err_estimate + hm.err_estimate) + tol / 4.0;
  out.evaluations = vert.evaluations + hp.evaluations + hm.evaluations;
  if (!vert.converged() || !hp.converged() || !hm.converged()) out.status = QuadStatus::budget_exhausted;
  if (x < 1.0) out.status = QuadStatus::out_of_regime;
  return out;
}

double stationary_phase_bound(const PhaseBoundParams& p) {
  if (!(p.P > 0 && p.Q > 0 && p.R > 0 && p.S > 0 && p.Z > 0) || p.A < 0 || !(p.b > p.a))
    throw std::invalid_argument("stationary_phase_bound: invalid parameters");
  const double base = p.Z / (p.R * p.R * p.Q * p.Q) + 1.0 / (p.R * p.Q) + 1.0 / (p.R * p.P);
  return (p.b - p.a) * p.S * std::pow(base, p.A);
}

bool InertProfile::bounded_by(double C) const {
  for (double r : ratios)
    if (!(r <= C)) return false;
  return true;
}

InertProfile inertness_profile(const ComplexFn& f, double X, double a, double b, int max_order,
                               int grid_points) {
  if (!(X >= 1.0)) throw std::invalid_argument("inertness_profile: X must be >= 1");
  if (max_order < 0 || max_order > 6) throw std::invalid_argument("inertness_profile: max_order in [0, 6]");
  if (!(a > 0.0 && b > a) || grid_points < 2) throw std::invalid_argument("inertness_profile: bad interval");
  const double eps = std::numeric_limits<double>::epsilon();
  InertProfile out;
  out.X = X;
  out.ratios.assign(static_cast<std::size_t>(max_order + 1), 0.0);
  out.flagged.assign(static_cast<std::size_t>(max_order + 1), false);
  std::vector<double> noise(static_cast<std::size_t>(max_order + 1), 0.0);
  for (int g = 0; g < grid_points; ++g) {
    const double x = a * std::pow(b / a, static_cast<double>(g) / (grid_points - 1));
    for (int i = 0; i <= max_order; ++i) {
      const double h = std::pow(eps, 1.0 / (i + 2.0)) * std::abs(x);
      cplx d = 0.0;
      double absum = 0.0;
      double binom = 1.0;
      for (int k = 0; k <= i; ++k) {
        const cplx fv = f(x + (0.5 * i - k) * h);
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        d += sgn * binom * fv;
        absum += binom * std::abs(fv);
        binom = binom * (i - k) / (k + 1.0);
      }
      const double scale = std::pow(x / X, i) / std::pow(h, i);
      const double r = std::abs(d) * scale;
      const double nz = eps * absum * scale;
      auto idx = static_cast<std::size_t>(i);
      out.ratios[idx] = std::max(out.ratios[idx], r);
      noise[idx] = std::max(noise[idx], nz);
    }
  }
  for (std::size_t i = 0; i < noise.size(); ++i)
    out.flagged[i] = noise[i] > 0.01 * std::max(out.ratios[i], 1.0);
  return out;
}

double SmoothBump::operator()(double x) const {
  if (!(x > lo && x < hi)) return 0.0;
  const double u = (2.0 * x - lo - hi) / (hi - lo);
  const double v = 1.0 - u * u;
  return std::exp(1.0 - 1.0 / std::pow(v, k));
}

QuadratureResult igamma_model_integral(int sign, double gamma, double lambda, double rho,
                                       const RealFn& weight, double tol) {
  if (!(gamma > 1.0) || !(rho > 0.0) || (sign != 1 && sign != -1))
    throw std::invalid_argument("igamma_model_integral: need gamma > 1, rho > 0, sign = +-1");
  const double s = static_cast<double>(sign);
  return oscillatory_integral(
      [=](double x) { return lambda * (x + s * gamma * std::pow(x, 1.0 / gamma)); },
      [&weight](double x) { return cplx(weight(x), 0.0); }, rho, 2.0 * rho, tol);
}

cplx vgamma_extract(double gamma, double lambda, double rho, const RealFn& weight, double tol) {
  const double r = rho / std::sqrt(2.0);
  if (!(r >= 0.5 * (1.0 - 1e-12) && r <= 2.0 * (1.0 + 1e-12))) throw std::invalid_argument("vgamma_extract: need 1/2 <= rho/sqrt(2) <= 2");
  const QuadratureResult I = igamma_model_integral(-1, gamma, lambda, rho, weight, tol);
  return e(lambda * (gamma - 1.0)) * std::sqrt(lambda) * I.value;
}

}  // namespace specpoint
