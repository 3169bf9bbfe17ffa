#include "specpoint/kuznetsov.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "specpoint/arith.hpp"
#include "specpoint/parallel.hpp"
#include "specpoint/specfun.hpp"

namespace specpoint {

using arith::i64;

namespace {
constexpr double kPi = std::numbers::pi;

double omega_eis(double t) {
  if (t == 0.0) return 0.0;
  return 1.0 / std::norm(zeta(cplx(1.0, 2.0 * t)));
}

// sigma_{2it}(n) from a divisor list
cplx sigma_2it(const std::vector<i64>& divs, double t) {
  cplx s = 0.0;
  for (i64 d : divs) s += std::polar(1.0, 2.0 * t * std::log(static_cast<double>(d)));
  return s;
}

// sum_{c > C} tau(c) c^{-3/2}: explicit to 64 C, then the integral bound
double weil_tail_sum(i64 C) {
  const i64 X = 64 * std::max<i64>(C, 1);
  double s = 0.0;
  for (i64 c = C + 1; c <= X; ++c) s += static_cast<double>(arith::divisor_count(c)) * std::pow(static_cast<double>(c), -1.5);
  const double xd = static_cast<double>(X);
  return s + 2.0 * (std::log(xd) + 2.0 * 0.5772156649015329 + 2.0) / std::sqrt(xd);
}

double t_window_end(const SpectralWeight& sw, double tol) { return sw.T + weight_halfwidth(sw, tol); }

std::vector<double> unit_breaks(double a, double b, double step) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
  std::vector<double> v;
  for (int i = 0; i <= n; ++i) v.push_back(a + (b - a) * i / n);
  return v;
}
}  // namespace

double spectral_side(i64 m, i64 n, const SpectralWeight& sw, double y, const std::vector<MaassForm>& forms,
                     bool* tail_warning) {
  std::vector<double> terms;
  terms.reserve(forms.size());
  double tmax = 0.0;
  for (const auto& f : forms) {
    terms.push_back(f.omega * weight_h_y(f.t, y, sw) * f.lambda(m) * f.lambda(n));
    tmax = std::max(tmax, f.t);
  }
  if (tail_warning) *tail_warning = forms.empty() || tmax < sw.T + 6.0 * sw.M;
  return pairwise_sum(terms);
}

double spectral_tail_bar(i64 m, i64 n, const SpectralWeight& sw, const std::vector<MaassForm>& forms) {
  double tmax = 0.0, wmax = 0.0;
  for (const auto& f : forms) {
    tmax = std::max(tmax, f.t);
    wmax = std::max(wmax, f.omega);
  }
  if (forms.empty()) wmax = 10.0;
  const double bound = static_cast<double>(arith::divisor_count(m) * arith::divisor_count(n)) *
                       std::pow(static_cast<double>(m * n), 7.0 / 64.0);
  const double end = std::max(tmax, t_window_end(sw, 1e-20)) + sw.M;
  if (tmax >= end) return 0.0;
  QuadOptions opt;
  opt.abs_tol = 1e-16;
  const auto r = integrate([&](double t) -> cplx { return t / 6.0 * weight_h(t, sw); }, unit_breaks(tmax, end, sw.M),
                           opt);
  return wmax * bound * r.real();
}

QuadratureResult eisenstein_side(i64 m, i64 n, const SpectralWeight& sw, double y, double tol, double* im_part) {
  if (m < 1 || n < 1) throw std::invalid_argument("eisenstein_side: m, n must be positive");
  const auto dm = arith::divisors(m), dn = arith::divisors(n);
  const double L = t_window_end(sw, tol / (10.0 * sw.M));
  const double lnm = std::log(static_cast<double>(n) / static_cast<double>(m));
  auto f = [&](double t) -> cplx {
    return omega_eis(t) * weight_h_y(t, y, sw) * std::polar(1.0, t * lnm) * sigma_2it(dm, t) *
           std::conj(sigma_2it(dn, t)) / kPi;
  };
  QuadOptions opt;
  opt.abs_tol = tol;
  QuadratureResult r = integrate(f, unit_breaks(-L, L, 1.0), opt);
  if (im_part) *im_part = r.value.imag();
  r.value = r.value.real();
  return r;
}

double diagonal_term(i64 m, i64 n, const SpectralWeight& sw, double tol) {
  return m == n ? diagonal_H(sw, tol).real() : 0.0;
}

KloostermanSide kloosterman_side(i64 m, i64 n, const SpectralWeight& sw, double y, i64 C_max, double tol) {
  KloostermanSide out;
  if (C_max < 1) return out;
  const double root = 4.0 * kPi * std::sqrt(static_cast<double>(m) * static_cast<double>(n));
  auto term = [&](i64 c) {
    const double S = arith::kloosterman(m, n, c).real();
    const QuadratureResult H = bessel_H(root / static_cast<double>(c), y, sw, tol);
    return std::make_pair(S / static_cast<double>(c) * H.real(),
                          std::abs(S) / static_cast<double>(c) * H.err_estimate * (H.converged() ? 1.0 : -1.0));
  };
  std::vector<double> vals(static_cast<std::size_t>(C_max)), errs(static_cast<std::size_t>(C_max));
  parallel_for(static_cast<std::size_t>(C_max) + 1, [&](std::size_t i) {
    const auto [v, e] = term(static_cast<i64>(i) + 1);
    if (i < vals.size()) {
      vals[i] = v;
      errs[i] = e;
    } else {
      out.tail = std::abs(v);
    }
  });
  // Past C the argument x is small and H is dominated by its linear term, so
  // |S(m,n;c)/c H(x_c)| <= |H(x_{C+1})| (C+1) sqrt((m,n)) tau(c) c^{-3/2} by Weil.
  const double S_next = std::abs(arith::kloosterman(m, n, C_max + 1).real());
  const double H_next = S_next > 0.0 ? out.tail * static_cast<double>(C_max + 1) / S_next
                                     : std::abs(bessel_H(root / static_cast<double>(C_max + 1), y, sw, tol).real());
  out.tail = H_next * static_cast<double>(C_max + 1) * std::sqrt(static_cast<double>(arith::gcd(m, n))) *
             weil_tail_sum(C_max);
  for (double& e : errs) {
    if (e < 0.0) {
      out.converged = false;
      e = -e;
    }
  }
  out.value = pairwise_sum(vals);
  out.quad_err = pairwise_sum(errs);
  return out;
}

double TraceReport::dominant() const {
  const double lhs = std::abs(spectral + eisenstein), rhs = std::abs(diagonal + kloosterman);
  return std::max({lhs, rhs, 1e-300});
}

TraceReport trace_residual(i64 m, i64 n, const SpectralWeight& sw, const std::vector<MaassForm>& forms, i64 C_max,
                           double tol) {
  TraceReport r;
  r.m = m;
  r.n = n;
  r.C_max = C_max;
  r.tol = tol;
  r.forms_used = forms.size();
  const double y = std::sqrt(static_cast<double>(m) / static_cast<double>(n));
  r.spectral = spectral_side(m, n, sw, y, forms, &r.tail_warning);
  r.spectral_tail = spectral_tail_bar(m, n, sw, forms);
  const QuadratureResult E = eisenstein_side(m, n, sw, y, tol);
  r.eisenstein = E.real();
  r.diagonal = diagonal_term(m, n, sw, tol);
  const KloostermanSide K = kloosterman_side(m, n, sw, y, C_max, tol);
  r.kloosterman = K.value;
  r.c_tail = K.tail;
  r.quad_err = E.err_estimate + K.quad_err + (m == n ? tol : 0.0);
  r.residual = std::abs(r.spectral + r.eisenstein - r.diagonal - r.kloosterman);
  return r;
}

double DecompositionReport::relative_residual() const {
  return residual / std::max({std::abs(S + T_eis), std::abs(D + P), 1e-300});
}

double cusp_form_sum(const Sequence& seq, const SpectralWeight& sw, const std::vector<MaassForm>& forms) {
  std::vector<double> terms;
  terms.reserve(forms.size());
  for (const auto& f : forms) {
    cplx s = 0.0;
    for (i64 n = seq.first(); n <= seq.last(); ++n)
      s += seq(n) * f.lambda(n) * std::polar(1.0, f.t * std::log(static_cast<double>(n)));
    terms.push_back(f.omega * weight_h(f.t, sw) * std::norm(s));
  }
  return pairwise_sum(terms);
}

QuadratureResult eisenstein_sum(const Sequence& seq, const SpectralWeight& sw, double tol) {
  std::vector<std::vector<i64>> divs;
  for (i64 n = seq.first(); n <= seq.last(); ++n) divs.push_back(arith::divisors(n));
  const double L = t_window_end(sw, tol / (10.0 * sw.M * (1.0 + seq.norm2())));
  auto f = [&](double t) -> cplx {
    cplx s = 0.0;
    for (std::size_t k = 0; k < divs.size(); ++k) s += seq.a[k] * sigma_2it(divs[k], t);
    return 2.0 / kPi * omega_eis(t) * weight_h(t, sw) * std::norm(s);
  };
  QuadOptions opt;
  opt.abs_tol = tol;
  return integrate(f, unit_breaks(0.0, L, 0.5), opt);
}

OffDiagonal offdiagonal_P(const Sequence& seq, const SpectralWeight& sw, i64 C_max) {
  OffDiagonal out;
  const i64 N = seq.N;
  const auto Nz = static_cast<Eigen::Index>(N);
  const double vmax_num = kPi * static_cast<double>(2 * N);
  if (C_max <= 0) C_max = std::max<i64>(1, static_cast<i64>(std::ceil(8.0 * vmax_num / sw.T)));
  const double R = I_cutoff(sw, 1e-15);
  const double MT = sw.M * sw.T;
  const GaussRule gl = gauss_legendre(20);

  out.per_c.assign(static_cast<std::size_t>(C_max), 0.0);
  parallel_for(static_cast<std::size_t>(C_max), [&](std::size_t idx) {
    const i64 c = static_cast<i64>(idx) + 1;
    const double cd = static_cast<double>(c);
    Eigen::MatrixXd S(Nz, Nz);
    const arith::ResidueTable tab(c);
    for (i64 i = 0; i < N; ++i)
      for (i64 j = 0; j < N; ++j) S(i, j) = tab.kloosterman(N + 1 + i, N + 1 + j).real();
    // largest angular frequency of the integrand in r
    const double omega = 2.0 * vmax_num / cd * 2.0 * std::exp(R) + 2.0 * sw.T + 12.0 * sw.M;
    const int panels = std::max(4, static_cast<int>(std::ceil(2.0 * R * omega / 2.0)));
    const double hw = R / panels;
    constexpr int kChunk = 2048;
    std::vector<double> rk, wk;
    rk.reserve(kChunk);
    wk.reserve(kChunk);
    double total = 0.0;
    auto flush = [&] {
      const auto K = static_cast<Eigen::Index>(rk.size());
      if (K == 0) return;
      Eigen::MatrixXcd A(Nz, K), B(Nz, K);
      for (Eigen::Index k = 0; k < K; ++k) {
        const auto [rp, rm] = rho_pm(rk[static_cast<std::size_t>(k)]);
        for (i64 i = 0; i < N; ++i) {
          const double nn = static_cast<double>(N + 1 + i);
          const double a = seq.a[static_cast<std::size_t>(i)].real();
          // e((m+n)/c) exp(2i(v rho_+ - w rho_-)) with v = pi m/c, w = pi n/c
          A(i, k) = a * std::polar(1.0, 2.0 * kPi * nn / cd * (1.0 + rp));
          B(i, k) = a * std::polar(1.0, 2.0 * kPi * nn / cd * (1.0 - rm));
        }
      }
      const Eigen::MatrixXcd SB = S.cast<cplx>() * B;
      std::vector<double> parts(static_cast<std::size_t>(K));
      for (Eigen::Index k = 0; k < K; ++k)
        parts[static_cast<std::size_t>(k)] =
            wk[static_cast<std::size_t>(k)] * (A.col(k).transpose() * SB.col(k)).value().real();
      total += pairwise_sum(parts);
      rk.clear();
      wk.clear();
    };
    for (int p = 0; p < 2 * panels; ++p) {
      const double mid = -R + hw * (p + 0.5);
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double r = mid + 0.5 * hw * gl.nodes[q];
        rk.push_back(r);
        wk.push_back(0.5 * hw * gl.weights[q] * MT * g_weight(r, sw));
        if (static_cast<int>(rk.size()) == kChunk) flush();
      }
    }
    flush();
    out.per_c[idx] = total / cd;
  });
  out.c_used = C_max;
  out.value = pairwise_sum(out.per_c);
  for (std::size_t k = out.per_c.size() >= 8 ? out.per_c.size() - 8 : 0; k < out.per_c.size(); ++k)
    out.tail += std::abs(out.per_c[k]);
  return out;
}

DecompositionReport decomposition(const Sequence& seq, const SpectralWeight& sw, const std::vector<MaassForm>& forms,
                                  double tol) {
  if (!seq.real)
    throw std::invalid_argument("decomposition: a_n must be real; complex a_n break the symmetrization in m, n");
  for (const auto& v : seq.a)
    if (v.imag() != 0.0) throw std::invalid_argument("decomposition: a_n must be real");
  DecompositionReport r;
  const double norm2 = seq.norm2();
  r.D_main = diagonal_H_main_term(sw) * norm2;
  if (seq.is_zero()) return r;
  r.S = cusp_form_sum(seq, sw, forms);
  r.T_eis = eisenstein_sum(seq, sw, tol).real();
  r.D = diagonal_H(sw, tol).real() * norm2;
  const OffDiagonal P = offdiagonal_P(seq, sw);
  r.P = P.value;
  r.P_tail = P.tail;
  r.c_used = P.c_used;
  // |sum a_m a_n lambda(m) lambda(n)| <= N ||a||^2 max_n (tau(n) n^{7/64})^2
  double lam = 0.0;
  for (i64 n = seq.first(); n <= seq.last(); ++n)
    lam = std::max(lam, static_cast<double>(arith::divisor_count(n)) * std::pow(static_cast<double>(n), 7.0 / 64.0));
  r.spectral_tail = spectral_tail_bar(1, 1, sw, forms) * lam * lam * norm2 * static_cast<double>(seq.N);
  r.residual = std::abs(r.S + r.T_eis - r.D - r.P);
  return r;
}

double p_bound_rhs(const Sequence& seq, const SpectralWeight& sw, double q_cap_const, double c_cap_const) {
  const double N = static_cast<double>(seq.N);
  const double tau = 6.1 / sw.M;
  const auto R = seq.autocorrelation();
  const i64 qmax = static_cast<i64>(std::floor(q_cap_const * N / sw.T));
  std::vector<double> terms;
  for (i64 q = 1; q <= qmax; ++q) {
    const i64 cmax = static_cast<i64>(std::floor(c_cap_const * N / (sw.T * static_cast<double>(q))));
    for (i64 c = 1; c <= cmax; ++c) {
      // sum_{m,n} a_m conj(a_n) c_c(m-n) int e((m-n) t/(cq)) dt
      double s = 0.0;
      for (std::size_t k = 0; k < R.size(); ++k) {
        const double z = 2.0 * kPi * static_cast<double>(k) * tau / static_cast<double>(c * q);
        const double ker = 2.0 * tau * (k == 0 ? 1.0 : std::sin(z) / z);
        const double cs = static_cast<double>(arith::ramanujan_sum(c, static_cast<i64>(k)));
        s += cs * ker * (k == 0 ? R[0].real() : 2.0 * R[k].real());
      }
      terms.push_back(s / static_cast<double>(c * q));
    }
  }
  return sw.M * sw.T * pairwise_sum(terms);
}

void write_trace_csv_header(std::ostream& out) {
  out << "m,n,T,M,spectral,eisenstein,diagonal,kloosterman,residual,rel_residual,spectral_tail,c_tail,quad_err,"
         "forms,C_max,tol\n";
}

void write_trace_csv_row(std::ostream& out, const TraceReport& r, const SpectralWeight& sw) {
  char buf[640];
  std::snprintf(buf, sizeof buf, "%lld,%lld,%.10g,%.10g,%.12e,%.12e,%.12e,%.12e,%.6e,%.6e,%.6e,%.6e,%.6e,%zu,%lld,%.3e\n",
                static_cast<long long>(r.m), static_cast<long long>(r.n), sw.T, sw.M, r.spectral, r.eisenstein,
                r.diagonal, r.kloosterman, r.residual, r.relative_residual(), r.spectral_tail, r.c_tail, r.quad_err,
                r.forms_used, static_cast<long long>(r.C_max), r.tol);
  out << buf;
}

}  // namespace specpoint
