#include "specpoint/sievebench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "specpoint/arith.hpp"
#include "specpoint/parallel.hpp"
#include "specpoint/specfun.hpp"

namespace specpoint {

using arith::i64;

namespace {
constexpr double kPi = std::numbers::pi;

double sinc(double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; }

// c_c(k) for k = 0..c-1
std::vector<double> ramanujan_row(i64 c) {
  std::vector<double> r(static_cast<std::size_t>(c));
  for (i64 k = 0; k < c; ++k) r[static_cast<std::size_t>(k)] = static_cast<double>(arith::ramanujan_sum(c, k));
  return r;
}

void check_lambda_range(const MaassForm& f, i64 n) {
  if (n > f.nmax()) {
    std::ostringstream os;
    os << "form t=" << f.t << " has lambda(n) up to " << f.nmax() << ", the sequence needs n <= " << n;
    throw std::out_of_range(os.str());
  }
}

double window_sum(const Sequence& seq, const std::vector<MaassForm>& forms, double lo, double hi, std::size_t* used) {
  std::vector<double> terms;
  for (const auto& f : forms) {
    if (!(f.t > lo && f.t <= hi)) continue;
    check_lambda_range(f, seq.last());
    cplx s = 0.0;
    for (i64 n = seq.first(); n <= seq.last(); ++n)
      s += seq(n) * f.lambda(n) * std::polar(1.0, f.t * std::log(static_cast<double>(n)));
    terms.push_back(f.omega * std::norm(s));
  }
  if (used) *used = terms.size();
  return pairwise_sum(terms);
}

double safe_ratio(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; }
}  // namespace

double young_ls_lhs(const Sequence& seq, double gamma, double tau, double v, i64 C) {
  if (gamma == 0.0 || !(tau > 0.0) || !(v > 0.0) || C < 1)
    throw std::invalid_argument("young_ls_lhs: need gamma != 0, tau > 0, v > 0, C >= 1");
  const i64 N = seq.N;
  const std::size_t len = seq.a.size();
  std::vector<double> per_c(static_cast<std::size_t>(C), 0.0);
  if (gamma == 1.0) {
    const auto R = seq.autocorrelation();
    parallel_for(per_c.size(), [&](std::size_t idx) {
      const i64 c = static_cast<i64>(idx) + 1;
      const auto rc = ramanujan_row(c);
      double s = 0.0;
      for (std::size_t k = 0; k < R.size(); ++k) {
        const double ker = 2.0 * tau * sinc(2.0 * kPi * static_cast<double>(k) * tau / (static_cast<double>(c) * v));
        s += rc[k % static_cast<std::size_t>(c)] * ker * (k == 0 ? R[0].real() : 2.0 * R[k].real());
      }
      per_c[idx] = s / static_cast<double>(c);
    });
  } else {
    std::vector<double> pw(len);
    for (std::size_t i = 0; i < len; ++i) pw[i] = std::pow(static_cast<double>(N + 1 + static_cast<i64>(i)), gamma);
    parallel_for(per_c.size(), [&](std::size_t idx) {
      const i64 c = static_cast<i64>(idx) + 1;
      const auto rc = ramanujan_row(c);
      const double scale = 2.0 * kPi * tau / (static_cast<double>(c) * v);
      double s = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        s += rc[0] * 2.0 * tau * std::norm(seq.a[i]);
        for (std::size_t j = 0; j < i; ++j) {
          const double re = (seq.a[i] * std::conj(seq.a[j])).real();
          if (re == 0.0) continue;
          s += 2.0 * re * rc[(i - j) % static_cast<std::size_t>(c)] * 2.0 * tau * sinc(scale * (pw[i] - pw[j]));
        }
      }
      per_c[idx] = s / static_cast<double>(c);
    });
  }
  return std::max(0.0, pairwise_sum(per_c));
}

SieveReport young_ls_ratio(const Sequence& seq, double gamma, double tau, double v, i64 C) {
  SieveReport r;
  r.kind = "young";
  r.N = seq.N;
  r.gamma = gamma;
  r.tau = tau;
  r.v = v;
  r.C = C;
  r.lhs = young_ls_lhs(seq, gamma, tau, v, C);
  const double logC = std::max(std::log(static_cast<double>(C)), 1.0);
  r.rhs = (tau * static_cast<double>(C) + v * std::pow(static_cast<double>(seq.N), 1.0 - gamma) * logC) * seq.norm2();
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

SieveReport corollary_ratio(const Sequence& seq, const SpectralWeight& sw, const std::vector<MaassForm>& forms) {
  sw.validate();
  SieveReport r;
  r.kind = "corollary";
  r.T = sw.T;
  r.M = sw.M;
  r.N = seq.N;
  r.lhs = window_sum(seq, forms, sw.T, sw.T + sw.M, nullptr);
  r.rhs = sw.M * (sw.T + static_cast<double>(seq.N)) * seq.norm2();
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

SieveReport dirichlet_poly_ratio(const Sequence& seq, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("dirichlet_poly_ratio: T must be positive");
  SieveReport r;
  r.kind = "dirichlet";
  r.T = T;
  r.N = seq.N;
  const std::size_t len = seq.a.size();
  std::vector<double> rows(len);
  parallel_for(len, [&](std::size_t i) {
    const double li = std::log(static_cast<double>(seq.first() + static_cast<i64>(i)));
    double s = 2.0 * T * std::norm(seq.a[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const double d = li - std::log(static_cast<double>(seq.first() + static_cast<i64>(j)));
      s += 2.0 * (seq.a[i] * std::conj(seq.a[j])).real() * 2.0 * std::sin(T * d) / d;
    }
    rows[i] = s;
  });
  r.lhs = std::max(0.0, pairwise_sum(rows));
  r.rhs = (2.0 * T + static_cast<double>(seq.N)) * seq.norm2();
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

DiLuoRow di_luo_comparison(const Sequence& seq, double T, const std::vector<MaassForm>& forms) {
  if (!(T > 0.0)) throw std::invalid_argument("di_luo_comparison: T must be positive");
  double top = 0.0;
  for (const auto& f : forms) top = std::max(top, f.t);
  if (top < T) {
    std::ostringstream os;
    os << "di_luo_comparison: the dataset stops at t = " << top << " < T = " << T;
    throw std::invalid_argument(os.str());
  }
  DiLuoRow r;
  r.lhs = window_sum(seq, forms, 0.0, T, &r.forms_used);
  const double Ne = 2.0 * static_cast<double>(seq.N), n2 = seq.norm2();
  r.rhs_first = (T * T + Ne * Ne) * n2;
  r.rhs_second = (T * T + std::pow(T, 1.5) * std::sqrt(Ne) + std::pow(Ne, 1.25)) * n2;
  r.ratio_first = safe_ratio(r.lhs, r.rhs_first);
  r.ratio_second = safe_ratio(r.lhs, r.rhs_second);
  return r;
}

MomentReport moment_demo(const GL3Form& f, const std::vector<MaassForm>& forms, const SpectralWeight& sw, i64 N,
                         i64 n1, double tol) {
  sw.validate();
  if (N < 1 || n1 < 1) throw std::invalid_argument("moment_demo: N and n1 must be positive");
  if (std::max(n1, 2 * N) > f.row_limit()) {
    std::ostringstream os;
    os << "moment_demo: GL(3) row reaches n = " << f.row_limit() << ", need A(" << n1 << ", n) for n <= " << 2 * N;
    throw std::out_of_range(os.str());
  }
  const SmoothBump w{1.0, 2.0, 3};
  std::vector<cplx> b;  // A(n1, n) w(n/N) N^{-1/2}
  std::vector<std::vector<i64>> divs;
  MomentReport r;
  for (i64 n = N + 1; n <= 2 * N; ++n) {
    const cplx A = f.A(n1, n);
    r.coeff_norm += std::norm(A);
    b.push_back(A * w(static_cast<double>(n) / static_cast<double>(N)) / std::sqrt(static_cast<double>(N)));
    divs.push_back(arith::divisors(n));
  }

  std::vector<double> terms;
  for (const auto& form : forms) {
    check_lambda_range(form, 2 * N);
    cplx s = 0.0;
    for (i64 n = N + 1; n <= 2 * N; ++n)
      s += b[static_cast<std::size_t>(n - N - 1)] * form.lambda(n) * std::polar(1.0, -form.t * std::log(static_cast<double>(n)));
    terms.push_back(form.omega * weight_h(form.t, sw) * std::norm(s));
  }
  r.S = pairwise_sum(terms);

  double bn = 0.0;
  for (const cplx& x : b) bn += std::abs(x);
  const double W = weight_halfwidth(sw, tol / (10.0 * sw.M * (1.0 + bn * bn)));
  const double L = sw.T + W;
  auto g = [&](double t) -> cplx {
    if (t == 0.0) return 0.0;
    cplx s = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      cplx sig = 0.0;
      for (i64 d : divs[k]) sig += std::polar(1.0, -2.0 * t * std::log(static_cast<double>(d)));
      s += b[k] * sig;
    }
    return std::norm(s) * weight_h(t, sw) / (kPi * std::norm(zeta(cplx(1.0, 2.0 * t))));
  };
  std::vector<double> br;
  const int pieces = std::max(2, static_cast<int>(std::ceil(2.0 * L / 0.5)));
  for (int i = 0; i <= pieces; ++i) br.push_back(-L + 2.0 * L * i / pieces);
  QuadOptions opt;
  opt.abs_tol = tol;
  const QuadratureResult q = integrate(g, br, opt);
  r.T_eis = q.value.real();
  r.quad_err = q.err_estimate;

  const double Nd = static_cast<double>(N), n1d = static_cast<double>(n1);
  r.majorant = (1.0 + sw.M * sw.T / Nd) * r.coeff_norm + (n1d + sw.T / (sw.M * sw.M)) * Nd * n1d;
  r.ratio = (r.S + r.T_eis) / r.majorant;
  return r;
}

SuiteSummary sieve_suite(const std::vector<i64>& Ns, int trials, std::uint64_t seed0, const SpectralWeight& sw,
                         const std::vector<MaassForm>& forms) {
  SuiteSummary out;
  for (i64 N : Ns) {
    const std::size_t per = 5;
    std::vector<SieveReport> block(static_cast<std::size_t>(trials) * per);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
      const std::uint64_t seed = seed0 + i;
      const Sequence seq = Sequence::random(N, seed, false);
      const i64 C = static_cast<i64>(std::ceil(4.0 * static_cast<double>(N) / sw.T));
      SieveReport y = young_ls_ratio(seq, 1.0, 6.1 / sw.M, 1.0, C);
      y.T = sw.T;
      y.M = sw.M;
      SieveReport c = corollary_ratio(seq, sw, forms);
      SieveReport d = dirichlet_poly_ratio(seq, sw.T);
      d.M = sw.M;
      const DiLuoRow dl = di_luo_comparison(seq, sw.T, forms);
      SieveReport d1, d2;
      d1.kind = "diluo_first";
      d2.kind = "diluo_second";
      d1.lhs = d2.lhs = dl.lhs;
      d1.rhs = dl.rhs_first;
      d2.rhs = dl.rhs_second;
      d1.ratio = dl.ratio_first;
      d2.ratio = dl.ratio_second;
      for (SieveReport* r : {&y, &c, &d, &d1, &d2}) {
        r->seed = seed;
        r->N = N;
        r->T = sw.T;
        r->M = sw.M;
      }
      block[i * per + 0] = y;
      block[i * per + 1] = c;
      block[i * per + 2] = d;
      block[i * per + 3] = d1;
      block[i * per + 4] = d2;
    });
    for (const auto& r : block) {
      if (r.kind == "young") out.max_young = std::max(out.max_young, r.ratio);
      if (r.kind == "corollary") out.max_corollary = std::max(out.max_corollary, r.ratio);
      if (r.kind == "dirichlet") out.max_dirichlet = std::max(out.max_dirichlet, r.ratio);
      if (r.kind == "diluo_first") out.max_diluo_first = std::max(out.max_diluo_first, r.ratio);
      if (r.kind == "diluo_second") out.max_diluo_second = std::max(out.max_diluo_second, r.ratio);
      out.rows.push_back(r);
    }
  }
  return out;
}

void write_sieve_csv_header(std::ostream& out) { out << "kind,seed,N,T,M,gamma,tau,v,C,lhs,rhs,ratio\n"; }

void write_sieve_csv_row(std::ostream& out, const SieveReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%llu,%lld,%.10g,%.10g,%.10g,%.10g,%.10g,%lld,%.12e,%.12e,%.12e\n", r.kind.c_str(),
                static_cast<unsigned long long>(r.seed), static_cast<long long>(r.N), r.T, r.M, r.gamma, r.tau, r.v,
                static_cast<long long>(r.C), r.lhs, r.rhs, r.ratio);
  out << buf;
}

void write_suite_summary(std::ostream& out, const SuiteSummary& s) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "# suite maxima: young %.12e corollary %.12e dirichlet %.12e diluo_first %.12e diluo_second %.12e\n",
                s.max_young, s.max_corollary, s.max_dirichlet, s.max_diluo_first, s.max_diluo_second);
  out << buf;
}

}  // namespace specpoint
