#include "specpoint/besselintegral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "specpoint/specfun.hpp"

namespace specpoint {

namespace {
constexpr double kPi = std::numbers::pi;
const double kGaussNorm = 2.0 / (kPi * std::sqrt(kPi));

double beta(double r) { return std::exp(-r * r); }

std::vector<double> even_breaks(double a, double b, double step) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
  return v;
}
}  // namespace

void SpectralWeight::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("SpectralWeight: T must be positive");
  if (!(M >= 1.0 && M <= T)) throw std::invalid_argument("SpectralWeight: need 1 <= M <= T");
}

void SpectralWeight::validate_asymptotic() const {
  validate();
  if (!(M >= std::pow(T, 0.05) && M <= std::pow(T, 0.95)))
    throw std::invalid_argument("SpectralWeight: asymptotic regime needs T^0.05 <= M <= T^0.95");
}

double weight_h(double t, const SpectralWeight& sw) { return beta((t - sw.T) / sw.M) + beta((t + sw.T) / sw.M); }

double weight_h_y(double t, double y, const SpectralWeight& sw) {
  return weight_h(t, sw) * std::cos(2.0 * t * std::log(y));
}

double weight_halfwidth(const SpectralWeight& sw, double tol) {
  return sw.M * std::sqrt(std::log(1.0 / std::min(tol, 0.5)));
}

QuadratureResult bessel_H_direct(double x, double y, const SpectralWeight& sw, double tol) {
  sw.validate();
  if (!(y > 0.0)) throw std::invalid_argument("bessel_H_direct: y must be positive");
  QuadratureResult out;
  if (x < 1.0) {
    out.status = QuadStatus::out_of_regime;
    return out;
  }
  const double scale = 4.0 / (kPi * kPi);
  const double W = weight_halfwidth(sw, tol / (scale * (sw.T + 10.0 * sw.M) * 10.0));
  const double a = std::max(0.0, sw.T - W), b = sw.T + W;
  const double tol_B = std::min(1e-12, tol / (scale * b * (b - a)));
  double worst_B = 0.0;
  bool b_ok = true;
  const double ly = std::log(y);
  auto f = [&](double t) -> cplx {
    const QuadratureResult B = mehler_sonine_kernel(t, x, tol_B);
    worst_B = std::max(worst_B, B.err_estimate);
    if (!B.converged()) b_ok = false;
    const double th = t > 12.0 ? 1.0 : std::tanh(kPi * t);
    return scale * t * weight_h(t, sw) * std::cos(2.0 * t * ly) * th * B.real();
  };
  QuadOptions opt;
  opt.abs_tol = tol;
  opt.max_evaluations = 200'000;
  out = integrate(f, even_breaks(a, b, 1.0), opt);
  out.value = out.value.real();
  out.err_estimate += scale * b * (b - a) * worst_B;
  if (!b_ok) out.status = QuadStatus::budget_exhausted;
  return out;
}

QuadratureResult bessel_H_small(double x, double y, const SpectralWeight& sw, double tol) {
  sw.validate();
  if (!(x > 0.0) || !(y > 0.0)) throw std::invalid_argument("bessel_H_small: x, y must be positive");
  const double W = weight_halfwidth(sw, tol / (sw.T + 10.0 * sw.M));
  const double ly = std::log(y);
  auto f = [&](double t) -> cplx {
    if (t == 0.0) return 0.0;
    const cplx J = bessel_j_series(cplx(0.0, 2.0 * t), x, kPi * t);
    return -(4.0 / kPi) * J.imag() * weight_h(t, sw) * std::cos(2.0 * t * ly) * 2.0 * t /
           (1.0 + std::exp(-2.0 * kPi * t));
  };
  QuadOptions opt;
  opt.abs_tol = tol;
  QuadratureResult out = integrate(f, even_breaks(0.0, sw.T + W, 1.0), opt);
  out.value = out.value.real();
  return out;
}

QuadratureResult bessel_H(double x, double y, const SpectralWeight& sw, double tol) {
  return x < 1.0 ? bessel_H_small(x, y, sw, std::min(tol, 1e-12)) : bessel_H_direct(x, y, sw, tol);
}

double g_weight(double r, const SpectralWeight& sw) {
  const double u = sw.M * r;
  const double b = beta(u), db = -2.0 * u * b;
  return kGaussNorm * (2.0 * b * std::cos(2.0 * sw.T * r) + (sw.M / sw.T) * db * std::sin(2.0 * sw.T * r));
}

std::pair<double, double> rho_pm(double r) { return {std::expm1(r), -std::expm1(-r)}; }

double I_cutoff(const SpectralWeight& sw, double tol) {
  const double MT = sw.M * sw.T;
  double u = 6.1;
  while (MT * kGaussNorm * (2.0 + 2.0 * (sw.M / sw.T) * u) * beta(u) >= tol && u < 40.0) u += 0.05;
  return u / sw.M;
}

QuadratureResult I_integral(double v, double w, const SpectralWeight& sw, double tol) {
  sw.validate();
  if (!(v >= 0.0) || !(w >= 0.0)) throw std::invalid_argument("I_integral: v, w must be nonnegative");
  const double R = I_cutoff(sw, tol);
  const double MT = sw.M * sw.T;
  return oscillatory_integral(
      [v, w](double r) {
        const auto [p, m] = rho_pm(r);
        return (v * p - w * m) / kPi;
      },
      [&sw, MT](double r) { return cplx(MT * g_weight(r, sw), 0.0); }, -R, R, tol);
}

QuadratureResult H_asymptotic(double x, double y, const SpectralWeight& sw, double tol) {
  const double v = 0.25 * x * y, w = 0.25 * x / y;
  QuadratureResult I = I_integral(v, w, sw, tol);
  I.value = (std::polar(1.0, 2.0 * (v + w)) * I.value).real();
  return I;
}

QuadratureResult diagonal_H(const SpectralWeight& sw, double tol) {
  sw.validate();
  const double W = weight_halfwidth(sw, tol / (sw.T + 10.0 * sw.M));
  QuadOptions opt;
  opt.abs_tol = tol;
  QuadratureResult out = integrate(
      [&sw](double t) -> cplx { return 2.0 / (kPi * kPi) * weight_h(t, sw) * std::tanh(kPi * t) * t; },
      even_breaks(0.0, sw.T + W, sw.M), opt);
  return out;
}

double diagonal_H_main_term(const SpectralWeight& sw) { return kGaussNorm * sw.M * sw.T; }

BesselCompareReport compare_H_asymptotic(double x, double y, const SpectralWeight& sw, double tol) {
  BesselCompareReport r;
  r.x = x;
  r.y = y;
  const QuadratureResult d = bessel_H_direct(x, y, sw, tol);
  const QuadratureResult a = H_asymptotic(x, y, sw, tol);
  r.H_direct = d.value.real();
  r.H_asymptotic = a.value.real();
  r.abs_residual = std::abs(r.H_direct - r.H_asymptotic);
  r.rel_residual = r.abs_residual / std::max(std::abs(r.H_direct), 1e-30);
  r.quadrature_err = d.err_estimate + a.err_estimate;
  r.converged = d.converged() && a.converged();
  return r;
}

void write_bessel_csv_header(std::ostream& out) { out << "x,y,T,M,H_direct,H_asym,abs_res,rel_res,quad_err\n"; }

void write_bessel_csv_row(std::ostream& out, const BesselCompareReport& r, const SpectralWeight& sw) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.12e,%.12e,%.6e,%.6e,%.6e\n", r.x, r.y, sw.T, sw.M,
                r.H_direct, r.H_asymptotic, r.abs_residual, r.rel_residual, r.quadrature_err);
  out << buf;
}

std::vector<SmallxRow> smallx_decay_scan(const SpectralWeight& sw, const std::vector<double>& u_grid, int y_samples,
                                         double y_max) {
  std::vector<SmallxRow> rows;
  for (double u : u_grid) {
    if (!(u >= 0.0) || u > 1.0) throw std::invalid_argument("smallx_decay_scan: u must lie in [0, 1]");
    SmallxRow row;
    row.u = u;
    if (u > 0.0) {
      for (int k = 0; k < y_samples; ++k) {
        const double y = y_samples == 1 ? 1.0 : std::pow(y_max, static_cast<double>(k) / (y_samples - 1));
        const double x = u / (y + 1.0 / y);
        const QuadratureResult H = bessel_H(x, y, sw);
        if (std::abs(H.value.real()) >= row.max_abs_H) {
          row.max_abs_H = std::abs(H.value.real());
          row.argmax_y = y;
        }
        row.quadrature_err = std::max(row.quadrature_err, H.err_estimate);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace specpoint
