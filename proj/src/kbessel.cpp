#include "specpoint/kbessel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "specpoint/specfun.hpp"

namespace specpoint {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 120;
}  // namespace

double KBesselIt::series(double t, double x) {
  if (!(t > 0.0) || !(x > 0.0)) throw std::domain_error("KBesselIt::series: need t > 0, x > 0");
  // K_{it}(x) = -pi Im I_{it}(x) / sinh(pi t)
  const std::complex<double> it(0.0, t);
  const double q = 0.25 * x * x;
  std::complex<double> term = 1.0, sum = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<double>(k) * (static_cast<double>(k) + it));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  const std::complex<double> pre =
      std::exp(it * std::log(0.5 * x) - log_gamma(1.0 + it) - 0.5 * kPi * t);
  return -2.0 * kPi / (-std::expm1(-2.0 * kPi * t)) * (pre * sum).imag();
}

double KBesselIt::asymptotic_w(double x) const {
  // exp(pi t/2) sqrt(pi/(2x)) sum_k prod_j -(4t^2 + (2j-1)^2) / (8 j x)
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < kMaxTerms; ++j) {
    const double next = term * -(4.0 * t_ * t_ + (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j * x);
    if (std::abs(next) > std::abs(term) && j > 2) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::exp(0.5 * kPi * t_) * std::sqrt(kPi / (2.0 * x)) * sum;
}

double KBesselIt::taylor(const Node& n, double h) const {
  const double x0 = n.x, t2 = t_ * t_;
  double am1 = 0.0, a0 = n.w, a1 = n.dw;
  double sum = a0 + a1 * h, hp = h;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double kk = k;
    const double rhs = 2.0 * x0 * (kk + 1.0) * kk * a1 + kk * (kk - 1.0) * a0 +
                       (x0 - 2.0 * x0 * x0) * (kk + 1.0) * a1 + (1.0 - 4.0 * x0) * kk * a0 -
                       2.0 * (kk - 1.0) * am1 + (t2 - x0) * a0 - am1;
    const double a2 = -rhs / (x0 * x0 * (kk + 2.0) * (kk + 1.0));
    hp *= h;
    const double contrib = a2 * hp;
    sum += contrib;
    am1 = a0;
    a0 = a1;
    a1 = a2;
    if (std::abs(contrib) < 1e-18 * std::abs(sum) && std::abs(a0 * hp / h) < 1e-18 * std::abs(sum) + 1e-300)
      break;
  }
  return sum;
}

KBesselIt::KBesselIt(double t, double x_min) : t_(t), x_min_(x_min) {
  if (!(t > 0.0)) throw std::domain_error("KBesselIt: need t > 0");
  if (!(x_min > 0.0)) throw std::domain_error("KBesselIt: need x_min > 0");
  x_start_ = std::max(10.0 * t, 60.0);

  // derivative of the asymptotic form by its own series
  auto start_dw = [&](double x) {
    double term = 1.0, s = 1.0, ds = 0.0;
    for (int j = 1; j < kMaxTerms; ++j) {
      const double next = term * -(4.0 * t_ * t_ + (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j * x);
      if (std::abs(next) > std::abs(term) && j > 2) break;
      term = next;
      s += term;
      ds += -j * term / x;
      if (std::abs(term) < 1e-18 * std::abs(s)) break;
    }
    return std::exp(0.5 * kPi * t_) * std::sqrt(kPi / 2.0) * (-0.5 * std::pow(x, -1.5) * s + ds / std::sqrt(x));
  };

  Node cur{x_start_, asymptotic_w(x_start_), start_dw(x_start_)};
  nodes_.push_back(cur);
  const double t2 = t_ * t_;
  while (cur.x > x_min_) {
    double h = std::min({2.0, 0.25 * cur.x, 4.0 * cur.x / std::max(t_, 1.0)});
    if (cur.x - h < x_min_) h = cur.x - x_min_;
    const double x0 = cur.x, hh = -h;
    // W and W' at x0 + hh from the same recurrence
    double am1 = 0.0, a0 = cur.w, a1 = cur.dw;
    double w = a0 + a1 * hh, dw = a1, hp = hh;
    for (int k = 0; k < kMaxTerms; ++k) {
      const double kk = k;
      const double rhs = 2.0 * x0 * (kk + 1.0) * kk * a1 + kk * (kk - 1.0) * a0 +
                         (x0 - 2.0 * x0 * x0) * (kk + 1.0) * a1 + (1.0 - 4.0 * x0) * kk * a0 -
                         2.0 * (kk - 1.0) * am1 + (t2 - x0) * a0 - am1;
      const double a2 = -rhs / (x0 * x0 * (kk + 2.0) * (kk + 1.0));
      dw += (kk + 2.0) * a2 * hp;
      hp *= hh;
      w += a2 * hp;
      am1 = a0;
      a0 = a1;
      a1 = a2;
      if (std::abs(a2 * hp) < 1e-18 * std::abs(w) && std::abs(a0 * hp / hh) < 1e-18 * std::abs(w) + 1e-300)
        break;
    }
    cur = {x0 + hh, w, dw};
    nodes_.push_back(cur);
  }
}

double KBesselIt::operator()(double x) const {
  if (!(x > 0.0)) throw std::domain_error("KBesselIt: need x > 0");
  if (x > 700.0) return 0.0;
  if (x >= x_start_) return std::exp(-x) * asymptotic_w(x);
  if (x < x_min_) return series(t_, x);
  // nodes_ is decreasing in x; take the closest node at or above x
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x,
                             [](const Node& n, double v) { return n.x > v; });
  if (it == nodes_.begin()) return std::exp(-x) * asymptotic_w(x);
  const Node& n = *std::prev(it);
  return std::exp(-x) * taylor(n, x - n.x);
}

}  // namespace specpoint
