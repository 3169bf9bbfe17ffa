#include "specpoint/voronoi.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "specpoint/arith.hpp"
#include "specpoint/parallel.hpp"

namespace specpoint {

using arith::i64;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// log sin(pi z), finite for large |Im z|; -inf at the zeros.
cplx log_sin_pi(cplx z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  // sin(pi z) = e^{-i pi z} (e^{2 pi i z} - 1) / (2i)
  const cplx w = std::exp(2.0 * kPi * kI * z);
  return -kI * kPi * z + std::log((w - 1.0) / (2.0 * kI));
}

// log(1/Gamma(z)); real part -inf at the poles of Gamma.
cplx log_rgamma(cplx z) {
  if (z.real() >= 0.5) return -log_gamma(z);
  return log_gamma(1.0 - z) + log_sin_pi(z) - std::log(kPi);
}

cplx log_rgamma_factor(cplx s, const std::array<cplx, 3>& lam) {
  cplx acc = 1.5 * s * std::log(kPi);
  for (const cplx& l : lam) acc += log_rgamma((s + l) / 2.0);
  return acc;
}

void check_numerator_pole(cplx s, const std::array<cplx, 3>& dual, double shift) {
  for (const cplx& l : dual) {
    const cplx z = (shift - s + l) / 2.0;
    const double k = std::round(z.real());
    if (k <= 0.0 && std::abs(z - k) < 0.5e-6) {
      std::ostringstream os;
      os << "G_pm: s = " << s << " lies within 1e-6 of a pole of gamma(" << shift << " - s)";
      throw std::domain_error(os.str());
    }
  }
}

cplx mellin_weight_at(const HankelSetup& st, double t) {
  const double L = std::log(st.X2 / st.X1);
  QuadOptions opt;
  opt.abs_tol = 1e-18;
  opt.rel_tol = 1e-14;
  const cplx s(st.sigma, t);
  const QuadratureResult r = integrate(
      [&](double u) -> cplx { return st.weight(st.X1 * std::exp(u)) * std::exp(s * u); },
      phase_partition([t](double u) { return t * u / (2.0 * kPi); }, 0.0, L), opt);
  return std::pow(cplx(st.X1, 0.0), s) * r.value;
}
}  // namespace

cplx log_gamma_factor(cplx s, const std::array<cplx, 3>& langlands) {
  cplx acc = -1.5 * s * std::log(kPi);
  for (const cplx& l : langlands) {
    const cplx z = (s + l) / 2.0;
    const double k = std::round(z.real());
    if (k <= 0.0 && std::abs(z - k) < 1e-14) {
      std::ostringstream os;
      os << "log_gamma_factor: pole at s = " << s;
      throw std::domain_error(os.str());
    }
    acc += log_gamma(z);
  }
  return acc;
}

std::array<cplx, 3> dual_parameters(const std::array<cplx, 3>& langlands) {
  return {-std::conj(langlands[0]), -std::conj(langlands[1]), -std::conj(langlands[2])};
}

std::pair<cplx, cplx> G_pm(cplx s, const std::array<cplx, 3>& langlands) {
  const auto dual = dual_parameters(langlands);
  check_numerator_pole(s, dual, 1.0);
  check_numerator_pole(s, dual, 2.0);
  const cplx a = std::exp(log_gamma_factor(1.0 - s, dual) + log_rgamma_factor(s, langlands));
  const cplx b = kI * std::exp(log_gamma_factor(2.0 - s, dual) + log_rgamma_factor(1.0 + s, langlands));
  return {a + b, a - b};
}

HankelSetup HankelSetup::bump(const std::array<cplx, 3>& langlands, double N, int k) {
  HankelSetup st;
  st.langlands = langlands;
  st.weight = SmoothBump{N, 2.0 * N, k};
  st.X1 = N;
  st.X2 = 2.0 * N;
  return st;
}

cplx MellinHankel::mellin_weight(double t) const { return mellin_weight_at(setup_, t); }

MellinHankel::MellinHankel(const HankelSetup& setup) : setup_(setup) {
  if (!(setup_.X1 > 0.0) || !(setup_.X2 > setup_.X1)) throw std::invalid_argument("MellinHankel: need 0 < X1 < X2");
  if (!setup_.weight) throw std::invalid_argument("MellinHankel: no weight");
  if (!(setup_.t_step > 0.0)) throw std::invalid_argument("MellinHankel: t_step must be positive");
  const double L = std::log(setup_.X2 / setup_.X1);
  const auto lam = setup_.langlands;

  // w~ computed by quadrature cannot resolve values below a rounding floor, and G grows
  // like |t|^{3/2 - 3 sigma}, so the cut also stops where w~ reaches that floor.
  double l1 = 0.0;
  {
    QuadOptions opt;
    opt.abs_tol = 1e-300;
    opt.rel_tol = 1e-12;
    l1 = integrate([&](double u) -> cplx { return std::abs(setup_.weight(setup_.X1 * std::exp(u))) * std::exp(setup_.sigma * u); },
                   0.0, L, opt)
             .real() *
         std::pow(setup_.X1, setup_.sigma);
  }
  const double floor = 1e-14 * l1;

  t_cap_ = setup_.t_cap;
  if (t_cap_ <= 0.0 && l1 == 0.0) t_cap_ = 20.0;
  if (t_cap_ <= 0.0) {
    double peak = 0.0;
    int quiet = 0;
    const double step = 5.0;
    for (double t = 0.5; ; t += step) {
      if (t > 20000.0) throw std::runtime_error("MellinHankel: contour truncation failed below |t| = 20000");
      const cplx w = mellin_weight(t);
      const auto [gp, gm] = G_pm(cplx(setup_.sigma, t), lam);
      const auto [hp, hm] = G_pm(cplx(setup_.sigma, -t), lam);
      const cplx wm = mellin_weight(-t);
      const double v = std::max({std::abs(gp * w), std::abs(gm * w), std::abs(hp * wm), std::abs(hm * wm)});
      peak = std::max(peak, v);
      const bool small = v < 1e-16 * peak || std::max(std::abs(w), std::abs(wm)) < floor;
      quiet = small ? quiet + 1 : 0;
      if (quiet >= 2 && t > 20.0) {
        t_cap_ = t;
        break;
      }
    }
  }

  dt_ = setup_.t_step;
  const int half = static_cast<int>(std::ceil(t_cap_ / dt_));
  const std::size_t n = 2 * static_cast<std::size_t>(half) + 1;
  ts_.resize(n);
  for (std::size_t j = 0; j < n; ++j) ts_[j] = (static_cast<int>(j) - half) * dt_;

  // w~ on the grid: composite Gauss-Legendre in u = log(x/X1), each panel spanning
  // well under a period of e^{i t_cap u}.
  const GaussRule g = gauss_legendre(20);
  const int panels = std::max(64, static_cast<int>(std::ceil(2.0 * L * t_cap_ / kPi)));
  std::vector<double> un, uw;
  un.reserve(static_cast<std::size_t>(panels) * 20);
  for (int p = 0; p < panels; ++p) {
    const double a = L * p / panels, b = L * (p + 1) / panels;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double u = 0.5 * (a + b) + 0.5 * (b - a) * g.nodes[i];
      const double wv = setup_.weight(setup_.X1 * std::exp(u)) * std::exp(setup_.sigma * u) * 0.5 * (b - a) * g.weights[i];
      if (wv != 0.0) {
        un.push_back(u);
        uw.push_back(wv);
      }
    }
  }
  std::vector<cplx> wt(n, 0.0);
  parallel_for(n, [&](std::size_t j) {
    cplx acc = 0.0;
    const double t = ts_[j];
    for (std::size_t i = 0; i < un.size(); ++i) acc += uw[i] * std::polar(1.0, t * un[i]);
    wt[j] = std::pow(cplx(setup_.X1, 0.0), cplx(setup_.sigma, t)) * acc;
  });

  gp_.assign(n, 0.0);
  gm_.assign(n, 0.0);
  std::vector<double> gabs_p(n), gabs_m(n);
  parallel_for(n, [&](std::size_t j) {
    const auto [p, m] = G_pm(cplx(setup_.sigma, ts_[j]), lam);
    const double wj = (j == 0 || j + 1 == n ? 0.5 : 1.0) * dt_ / (4.0 * kPi);
    gp_[j] = wj * p * wt[j];
    gm_[j] = wj * m * wt[j];
    gabs_p[j] = std::norm(wj * p * l1) + std::norm(gp_[j]);
    gabs_m[j] = std::norm(wj * m * l1) + std::norm(gm_[j]);
  });
  abs_plus_ = std::sqrt(pairwise_sum(gabs_p));
  abs_minus_ = std::sqrt(pairwise_sum(gabs_m));
}

double MellinHankel::rounding_estimate(double y) const {
  return 1e-15 * std::pow(std::abs(y), setup_.sigma - 1.0) * (y > 0.0 ? abs_plus_ : abs_minus_);
}

cplx MellinHankel::operator()(double y) const {
  if (y == 0.0 || !std::isfinite(y)) throw std::invalid_argument("MellinHankel: y must be finite and nonzero");
  const auto [p, m] = both(std::abs(y));
  return y > 0.0 ? p : m;
}

std::pair<cplx, cplx> MellinHankel::both(double y) const {
  if (!(y > 0.0) || !std::isfinite(y)) throw std::invalid_argument("MellinHankel: y must be finite and positive");
  const double l = std::log(y);
  const cplx step = std::polar(1.0, dt_ * l);
  cplx ap = 0.0, am = 0.0, pp = 0.0, pm = 0.0, z = 0.0;
  for (std::size_t j = 0; j < ts_.size(); ++j) {
    if (j % 128 == 0) {
      ap += pp;
      am += pm;
      pp = pm = 0.0;
      z = std::polar(1.0, ts_[j] * l);
    }
    pp += gp_[j] * z;
    pm += gm_[j] * z;
    z *= step;
  }
  const double s = std::pow(y, setup_.sigma - 1.0);
  return {s * (ap + pp), s * (am + pm)};
}

void KernelAsymptotics::write(std::ostream& out) const {
  std::ostringstream os;
  os.precision(17);
  os << "#kernel-asymptotics v1 K=" << K << " x_min=" << x_min << " fit_residual=" << fit_residual << "\n";
  os << "# x_grid";
  for (double x : x_grid) os << " " << x;
  os << "\n";
  for (int k = 0; k < K; ++k) {
    const auto& bp = B_plus[static_cast<std::size_t>(k)];
    const auto& bm = B_minus[static_cast<std::size_t>(k)];
    os << k << " " << bp.real() << " " << bp.imag() << " " << bm.real() << " " << bm.imag() << "\n";
  }
  out << os.str();
}

namespace {
// int w(x) e(sign 3 (x y)^{1/3}) (x y)^{-(k+1)/3} dx over the support, y > 0
cplx kernel_basis(const HankelSetup& st, int sign, int k, double y, double tol) {
  const double s = static_cast<double>(sign);
  return oscillatory_integral([=](double x) { return s * 3.0 * std::cbrt(x * y); },
                              [&, k, y](double x) -> cplx { return st.weight(x) * std::pow(x * y, -(k + 1) / 3.0); },
                              st.X1, st.X2, tol)
      .value;
}

std::vector<cplx> fit(const MellinHankel& mh, int sign, int K, const std::vector<double>& ys, double& resid) {
  const HankelSetup& st = mh.setup();
  const Eigen::Index rows = static_cast<Eigen::Index>(ys.size());
  Eigen::MatrixXcd A(rows, K);
  Eigen::VectorXcd b(rows);
  // Omega(+y) = int w J(-x y) carries B^-; Omega(-y) carries B^+
  bool any = false;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double y = ys[static_cast<std::size_t>(i)];
    const cplx om = mh(sign < 0 ? y : -y);
    if (om != 0.0) any = true;
    const double scale = 1.0 / std::max(std::abs(om), 1e-300);
    b(i) = om * scale;
    for (int k = 0; k < K; ++k) A(i, k) = kernel_basis(st, sign, k, y, 1e-14 * std::abs(om) + 1e-300) * scale;
  }
  if (!any) throw std::invalid_argument("calibrate_kernel: the weight transforms to zero on the grid");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(K - 1) <= 0.0 || sv(0) / sv(K - 1) > 1e12)
    throw std::runtime_error("calibrate_kernel: ill-conditioned fit; use a larger x_min or smaller K");
  const Eigen::VectorXcd x = svd.solve(b);
  resid = (A * x - b).norm() / b.norm();
  return std::vector<cplx>(x.data(), x.data() + K);
}
}  // namespace

KernelAsymptotics calibrate_kernel(const MellinHankel& mellin, int K, const std::vector<double>& y_grid) {
  if (K < 1 || K > 3) throw std::invalid_argument("calibrate_kernel: K must lie in [1, 3]");
  if (y_grid.size() < static_cast<std::size_t>(K)) throw std::invalid_argument("calibrate_kernel: grid smaller than K");
  const double ymin = *std::min_element(y_grid.begin(), y_grid.end());
  KernelAsymptotics ka;
  ka.K = K;
  ka.x_min = mellin.setup().X1 * ymin;
  if (!(ka.x_min >= 10.0)) throw std::invalid_argument("calibrate_kernel: x_min = N y_min must be at least 10");
  for (double y : y_grid) ka.x_grid.push_back(mellin.setup().X1 * y);
  double rp = 0, rm = 0;
  ka.B_minus = fit(mellin, -1, K, y_grid, rm);
  ka.B_plus = fit(mellin, +1, K, y_grid, rp);
  ka.fit_residual = std::max(rp, rm);
  return ka;
}

QuadratureResult hankel_kernel_route(double y, const HankelSetup& setup, const KernelAsymptotics& ka, double tol) {
  if (y == 0.0) throw std::invalid_argument("hankel_kernel_route: y must be nonzero");
  QuadratureResult out;
  const double ay = std::abs(y);
  if (setup.X1 * ay < ka.x_min * (1.0 - 1e-12)) {
    out.status = QuadStatus::out_of_regime;
    return out;
  }
  const int sign = y > 0.0 ? -1 : 1;
  const std::vector<cplx>& B = y > 0.0 ? ka.B_minus : ka.B_plus;
  const double s = static_cast<double>(sign);
  return oscillatory_integral([=](double x) { return s * 3.0 * std::cbrt(x * ay); },
                              [&](double x) -> cplx {
                                const double w = setup.weight(x);
                                if (w == 0.0) return 0.0;
                                const double z = std::cbrt(x * ay);
                                cplx acc = 0.0, p = 1.0 / z;
                                for (const cplx& b : B) {
                                  acc += b * p;
                                  p /= z;
                                }
                                return w * acc;
                              },
                              setup.X1, setup.X2, tol);
}

double omega_cutoff(const MellinHankel& mellin, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("omega_cutoff: tol must be positive");
  const double h = 0.002, l0 = std::log(1e-3), l1 = std::log(1e10);
  const std::size_t n = static_cast<std::size_t>((l1 - l0) / h) + 1;
  std::vector<double> mag(n);
  parallel_for(n, [&](std::size_t i) {
    const double y = std::exp(l0 + h * static_cast<double>(i));
    const auto [p, m] = mellin.both(y);
    mag[i] = std::max(std::abs(p), std::abs(m));
  });
  std::size_t last = 0;
  bool seen = false;
  for (std::size_t i = 0; i < n; ++i)
    if (mag[i] >= tol) {
      last = i;
      seen = true;
    }
  if (!seen) return std::exp(l0);
  const double y = std::exp(l0 + h * static_cast<double>(last + 1));
  if (y * 1e4 > std::exp(l1)) throw std::runtime_error("omega_cutoff: |Omega| has not decayed below tol on the scan");
  return y;
}

namespace {
VoronoiReport voronoi_at(const GL3Form& f, i64 m, i64 alpha, i64 c, const MellinHankel& mellin, double threshold) {
  const HankelSetup& st = mellin.setup();
  const i64 abar = *arith::mod_inverse(alpha, c);

  VoronoiReport r;
  r.omega_threshold = threshold;
  r.y_cut = omega_cutoff(mellin, threshold);
  r.divisors = arith::divisors(c * m);
  const double c3m = static_cast<double>(c) * c * c * m;
  i64 need = static_cast<i64>(std::floor(st.X2));
  for (i64 d : r.divisors) {
    const i64 nm = static_cast<i64>(std::ceil(r.y_cut * c3m / static_cast<double>(d * d)));
    r.n_max.push_back(nm);
    need = std::max({need, (3 * nm + 1) / 2, d});
  }
  need = std::max(need, m);
  if (need > f.row_limit()) {
    std::ostringstream os;
    os << "voronoi_residual: coefficient row reaches n = " << f.row_limit() << ", need A(1, n) for n <= " << need
       << " (direct sum over [" << st.X1 << ", " << st.X2 << "], dual sums to |Omega| < " << threshold << ")";
    throw std::out_of_range(os.str());
  }

  for (i64 n = static_cast<i64>(std::ceil(st.X1)); n <= static_cast<i64>(std::floor(st.X2)); ++n) {
    const double w = st.weight(static_cast<double>(n));
    if (w != 0.0) r.direct += f.A(m, n) * arith::e_frac(abar * n, c) * w;
  }

  cplx dual = 0.0, extended = 0.0;
  for (std::size_t k = 0; k < r.divisors.size(); ++k) {
    const i64 d = r.divisors[k];
    const i64 q = c * m / d;
    const i64 nm = r.n_max[k], ne = (3 * nm + 1) / 2;
    const arith::ResidueTable rt(q);
    std::vector<cplx> terms(static_cast<std::size_t>(ne));
    parallel_for(terms.size(), [&](std::size_t j) {
      const i64 n = static_cast<i64>(j) + 1;
      const double y = static_cast<double>(d * d) * static_cast<double>(n) / c3m;
      const cplx sp = rt.kloosterman(n, alpha * m);
      const cplx sm = rt.kloosterman(-n, alpha * m);
      const auto [op, om] = mellin.both(y);
      terms[j] = f.A(n, d) * (sp * om + sm * op);
    });
    const double scale = static_cast<double>(d) / (static_cast<double>(c) * c * m);
    cplx part = 0.0;
    for (i64 j = 0; j < ne; ++j) {
      if (j == nm) dual += scale * part;
      part += terms[static_cast<std::size_t>(j)];
    }
    if (ne == nm) dual += scale * part;
    extended += scale * part;
  }
  r.dual = dual;
  r.residual = std::abs(r.direct - dual);
  r.relative = r.residual / std::max(std::abs(r.direct), 1e-300);
  r.tail_change = std::abs(extended - dual);
  return r;
}
}  // namespace

VoronoiReport voronoi_residual(const GL3Form& f, i64 m, i64 alpha, i64 c, const MellinHankel& mellin,
                               double dual_tail_tol) {
  if (m < 1 || c < 1) throw std::invalid_argument("voronoi_residual: m and c must be positive");
  if (arith::gcd(alpha, c) != 1) throw std::invalid_argument("voronoi_residual: need gcd(alpha, c) = 1");
  if (!(dual_tail_tol > 0.0)) throw std::invalid_argument("voronoi_residual: dual_tail_tol must be positive");
  double threshold = dual_tail_tol;
  VoronoiReport r = voronoi_at(f, m, alpha, c, mellin, threshold);
  for (int i = 0; i < 4 && !(r.tail_change < dual_tail_tol); ++i) {
    threshold /= 10.0;
    r = voronoi_at(f, m, alpha, c, mellin, threshold);
  }
  return r;
}

}  // namespace specpoint
