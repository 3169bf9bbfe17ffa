#include "specpoint/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace specpoint {

namespace {

// Kronrod 21-point abscissae and weights, embedded 10-point Gauss weights.
constexpr double kXgk[11] = {0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
                             0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
                             0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
                             0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
                             0.294392862701460198131126603103866, 0.14887433898163121088482600112972,
                             0.0};
constexpr double kWgk[11] = {0.011694638867371874278064396062192, 0.03255816230796472747881897245939,
                             0.05475589657435199603138130024458,  0.07503967481091995276704314091619,
                             0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
                             0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
                             0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
                             0.149445554002916905664936468389821};
constexpr double kWg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                           0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                           0.295524224714752870173892994651338};

struct Panel {
  double a, b;
  cplx value;
  double err;
  bool at_floor;  // error estimate is pure rounding; splitting cannot help
};

Panel gk21(const ComplexFn& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx resk = fc * kWgk[10];
  cplx resg = 0.0;
  double resabs = std::abs(fc) * kWgk[10];
  cplx fv1[10], fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    const cplx s = fv1[j] + fv2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const cplx mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  const double ah = std::abs(h);
  resk *= h;
  resg *= h;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  const bool at_floor = err <= floor;
  err = std::max(err, floor);
  if (!std::isfinite(err) || !std::isfinite(resk.real()) || !std::isfinite(resk.imag()))
    return {a, b, resk, std::numeric_limits<double>::infinity(), false};
  return {a, b, resk, err, at_floor};
}

template <class T>
T pairwise_impl(const T* v, std::size_t n) {
  if (n == 0) return T(0);
  if (n <= 8) {
    T s = v[0];
    for (std::size_t i = 1; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_impl(v, h) + pairwise_impl(v + h, n - h);
}

}  // namespace

cplx pairwise_sum(const std::vector<cplx>& v) { return pairwise_impl(v.data(), v.size()); }
double pairwise_sum(const std::vector<double>& v) { return pairwise_impl(v.data(), v.size()); }

QuadratureResult integrate(const ComplexFn& f_in, const std::vector<double>& breakpoints,
                           const QuadOptions& opt) {
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
  QuadratureResult out;
  std::vector<double> bp = breakpoints;
  double sign = 1.0;
  if (bp.front() > bp.back()) {
    std::reverse(bp.begin(), bp.end());
    sign = -1.0;
  }
  if (bp.front() == bp.back()) return out;

  // Infinite ends are handled by x = x0 +- u/(1-u) on a dedicated panel.
  std::size_t evals = 0;
  const bool left_inf = std::isinf(bp.front());
  const bool right_inf = std::isinf(bp.back());
  if (left_inf && right_inf && bp.size() == 2) bp = {bp.front(), 0.0, bp.back()};

  struct Piece {
    double a, b;
    int map;  // 0 plain, +1 right-infinite from a, -1 left-infinite to b
    double x0;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double a = bp[i], b = bp[i + 1];
    if (std::isinf(a) && a < 0) {
      pieces.push_back({0.0, 1.0, -1, b});
    } else if (std::isinf(b) && b > 0) {
      pieces.push_back({0.0, 1.0, +1, a});
    } else if (b > a) {
      pieces.push_back({a, b, 0, 0.0});
    }
  }

  auto mapped = [&](const Piece& p) -> ComplexFn {
    if (p.map == 0) return f_in;
    const double x0 = p.x0;
    const double s = static_cast<double>(p.map);
    return [&f_in, x0, s](double u) -> cplx {
      const double w = 1.0 - u;
      const double x = x0 + s * u / w;
      return f_in(x) / (w * w);
    };
  };

  std::vector<ComplexFn> fns;
  fns.reserve(pieces.size());
  for (const auto& p : pieces) fns.push_back(mapped(p));

  struct Tagged {
    Panel p;
    std::size_t piece;
  };
  struct TaggedByError {
    bool operator()(const Tagged& x, const Tagged& y) const { return x.p.err < y.p.err; }
  };
  std::priority_queue<Tagged, std::vector<Tagged>, TaggedByError> q;
  double total_err = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    Panel pn = gk21(fns[k], pieces[k].a, pieces[k].b);
    evals += 21;
    total_err += pn.err;
    q.push({pn, k});
  }
  std::vector<Tagged> done;  // panels that cannot be split further

  auto current_value = [&]() {
    cplx s = 0.0;
    auto copy = q;
    while (!copy.empty()) {
      s += copy.top().p.value;
      copy.pop();
    }
    for (const auto& d : done) s += d.p.value;
    return s;
  };

  double floor_err = 0.0;  // rounding-limited panels already retired
  std::size_t iter = 0;
  cplx approx = current_value();
  while (!q.empty()) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(approx));
    if (total_err <= target) break;
    if (evals + 42 > opt.max_evaluations) {
      out.status = QuadStatus::budget_exhausted;
      break;
    }
    Tagged worst = q.top();
    q.pop();
    const double a = worst.p.a, b = worst.p.b;
    const double mid = 0.5 * (a + b);
    if (worst.p.at_floor) {
      done.push_back(worst);
      total_err -= worst.p.err;
      floor_err += worst.p.err;
      if (q.empty()) break;
      continue;
    }
    if (!(mid > a && mid < b) || (b - a) <= 1e-15 * std::max(std::abs(a), std::abs(b))) {
      done.push_back(worst);
      total_err -= worst.p.err;
      if (q.empty()) break;
      continue;
    }
    Panel l = gk21(fns[worst.piece], a, mid);
    Panel r = gk21(fns[worst.piece], mid, b);
    evals += 42;
    total_err += l.err + r.err - worst.p.err;
    approx += l.value + r.value - worst.p.value;
    q.push({l, worst.piece});
    q.push({r, worst.piece});
    if (++iter % 256 == 0) {
      // resynchronize running sums against drift
      total_err = 0.0;
      auto copy = q;
      while (!copy.empty()) {
        total_err += copy.top().p.err;
        copy.pop();
      }
      approx = current_value();
    }
  }

  std::vector<Tagged> all = done;
  while (!q.empty()) {
    all.push_back(q.top());
    q.pop();
  }
  std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) {
    if (x.piece != y.piece) return x.piece < y.piece;
    return x.p.a < y.p.a;
  });
  std::vector<cplx> vals;
  std::vector<double> errs;
  vals.reserve(all.size());
  errs.reserve(all.size());
  for (const auto& t : all) {
    vals.push_back(t.p.value);
    errs.push_back(t.p.err);
  }
  out.value = sign * pairwise_sum(vals);
  out.err_estimate = pairwise_sum(errs);
  out.evaluations = evals;
  if (out.status == QuadStatus::ok) {
    // rounding-limited panels count as converged
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
    if (!(out.err_estimate - floor_err <= target * (1.0 + 1e-9))) out.status = QuadStatus::budget_exhausted;
  }
  return out;
}

QuadratureResult integrate(const ComplexFn& f, double a, double b, const QuadOptions& opt) {
  return integrate(f, std::vector<double>{a, b}, opt);
}

std::vector<double> phase_partition(const RealFn& phase, double a, double b, double cycles,
                                    std::size_t max_pieces) {
  std::vector<double> out{a};
  struct Seg {
    double a, b, pa, pb;
  };
  std::vector<Seg> stack{{a, b, phase(a), phase(b)}};
  // depth-first, right segments pushed first so output stays ordered
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    const double m = 0.5 * (s.a + s.b);
    const double pm = phase(m);
    const bool small = std::abs(s.pb - s.pa) <= cycles && std::abs(pm - s.pa) <= cycles &&
                       std::abs(s.pb - pm) <= cycles;
    const bool tiny = !(m > s.a && m < s.b) || out.size() + stack.size() >= max_pieces;
    if (small || tiny) {
      out.push_back(s.b);
      continue;
    }
    stack.push_back({m, s.b, pm, s.pb});
    stack.push_back({s.a, m, s.pa, pm});
  }
  return out;
}

QuadratureResult oscillatory_integral(const RealFn& phase, const ComplexFn& amplitude, double a,
                                      double b, double tol, std::size_t max_evaluations) {
  if (!(tol > 0.0)) throw std::invalid_argument("oscillatory_integral: tol must be positive");
  ComplexFn f = [&](double x) -> cplx {
    const cplx amp = amplitude(x);
    if (amp == cplx(0.0)) return 0.0;
    double ph = phase(x);
    ph -= std::floor(ph);
    const double ang = 2.0 * std::numbers::pi * ph;
    return amp * cplx(std::cos(ang), std::sin(ang));
  };
  QuadOptions opt;
  opt.abs_tol = tol;
  opt.max_evaluations = max_evaluations;
  if (std::isinf(a) || std::isinf(b)) return integrate(f, a, b, opt);
  bool flip = false;
  if (a > b) {
    std::swap(a, b);
    flip = true;
  }
  std::vector<double> bp = phase_partition(phase, a, b, 1.0, max_evaluations / 42 + 1);
  QuadratureResult r = integrate(f, bp, opt);
  if (flip) r.value = -r.value;
  return r;
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule g;
  g.nodes.resize(static_cast<std::size_t>(n));
  g.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[static_cast<std::size_t>(i)] = -x;
    g.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    g.weights[static_cast<std::size_t>(i)] = w;
    g.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return g;
}

}  // namespace specpoint
