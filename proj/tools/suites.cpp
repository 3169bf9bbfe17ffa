#include "suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "specpoint/arith.hpp"
#include "specpoint/besselintegral.hpp"
#include "specpoint/kuznetsov.hpp"
#include "specpoint/parallel.hpp"
#include "specpoint/sievebench.hpp"
#include "specpoint/spectral.hpp"
#include "specpoint/voronoi.hpp"

namespace specpoint::cli {

using arith::i64;

const std::vector<std::string> kSubcommands = {"identity-check", "weil-scan",       "bessel-compare", "kuznetsov-verify",
                                               "decompose",      "sieve-experiment", "voronoi-verify", "moment-demo"};

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string data_path(const std::string& name) { return std::string(SPECPOINT_DATA_DIR) + "/" + name; }

Spectrum load_forms(const std::string& path) {
  if (!std::filesystem::exists(path)) throw DataError("missing data file: " + path);
  try {
    return load_spectrum(path);
  } catch (const SpectrumError& e) {
    throw DataError(e.what());
  }
}

GL3Form load_gl3(const RunConfig& cfg, std::int64_t lift_to) {
  if (!cfg.gl3.empty()) {
    if (!std::filesystem::exists(cfg.gl3)) throw DataError("missing data file: " + cfg.gl3);
    std::ifstream in(cfg.gl3);
    try {
      return import_gl3_csv(in);
    } catch (const std::exception& e) {
      throw DataError(cfg.gl3 + ": " + e.what());
    }
  }
  const Spectrum s = load_forms(cfg.spectrum);
  const MaassForm& f = s.forms.front();
  return sym_square_lift(f, std::min<std::int64_t>(lift_to, f.nmax()));
}

void check(Report& r, bool ok, const std::string& name) {
  if (!ok && std::find(r.failures.begin(), r.failures.end(), name) == r.failures.end()) r.failures.push_back(name);
}

Report identity_check(const RunConfig& cfg) {
  Report r;
  r.columns = {"suite", "c", "max_value", "checks"};
  const i64 C = cfg.cmax;
  std::vector<double> id(static_cast<std::size_t>(C)), weil(static_cast<std::size_t>(C));
  parallel_for(static_cast<std::size_t>(C), [&](std::size_t k) {
    const i64 c = static_cast<i64>(k) + 1;
    for (i64 m = 1; m <= 16; ++m)
      for (i64 n = 1; n <= 16; ++n) {
        id[k] = std::max(id[k], arith::factorization_identity_residual(m, n, c));
        if (m <= 8 && n <= 8) weil[k] = std::max(weil[k], arith::weil_ratio(m, n, c));
      }
  });
  double worst_id = 0, worst_weil = 0;
  for (i64 c = 1; c <= C; ++c) {
    const auto k = static_cast<std::size_t>(c - 1);
    r.rows.push_back({std::string("identity"), c, id[k], std::int64_t{256}});
    worst_id = std::max(worst_id, id[k]);
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<i64> um(1, 100000), uc(1, 500);
  double worst_random = 0;
  for (int i = 0; i < 1000; ++i) {
    const i64 m = um(rng), n = um(rng), c = uc(rng);
    worst_random = std::max(worst_random, arith::factorization_identity_residual(m, n, c));
  }
  r.rows.push_back({std::string("identity_random"), std::int64_t{500}, worst_random, std::int64_t{1000}});
  for (i64 c = 1; c <= C; ++c) {
    const auto k = static_cast<std::size_t>(c - 1);
    r.rows.push_back({std::string("weil"), c, weil[k], std::int64_t{64}});
    worst_weil = std::max(worst_weil, weil[k]);
  }
  r.notes.push_back("max identity residual " + fmt(std::max(worst_id, worst_random)) + ", max Weil ratio " + fmt(worst_weil));
  check(r, worst_id <= cfg.tol && worst_random <= cfg.tol, "factorization_identity");
  check(r, worst_weil <= 1.0 + 1e-12, "weil_bound");
  return r;
}

Report weil_scan(const RunConfig& cfg) {
  Report r;
  r.columns = {"c", "max_ratio", "argmax_m", "argmax_n"};
  const i64 C = cfg.cmax, K = cfg.N;
  struct Row {
    double v = 0;
    i64 m = 1, n = 1;
  };
  std::vector<Row> rows(static_cast<std::size_t>(C));
  parallel_for(rows.size(), [&](std::size_t k) {
    const i64 c = static_cast<i64>(k) + 1;
    for (i64 m = 1; m <= K; ++m)
      for (i64 n = 1; n <= K; ++n) {
        const double w = arith::weil_ratio(m, n, c);
        if (w > rows[k].v) rows[k] = {w, m, n};
      }
  });
  double worst = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    r.rows.push_back({static_cast<std::int64_t>(k + 1), rows[k].v, rows[k].m, rows[k].n});
    worst = std::max(worst, rows[k].v);
  }
  r.notes.push_back("max Weil ratio " + fmt(worst));
  check(r, worst <= 1.0 + 1e-12, "weil_bound");
  return r;
}

Report bessel_compare(const RunConfig& cfg) {
  Report r;
  const SpectralWeight sw{cfg.T, cfg.M};
  if (cfg.suite == "decay") {
    r.columns = {"kind", "u", "v", "w", "value", "quad_err"};
    std::vector<double> us;
    for (int i = 1; i <= 10; ++i) us.push_back(0.03 * i);
    const auto rows = smallx_decay_scan(sw, us);
    double worst_H = 0, worst_I = 0;
    for (const auto& row : rows) {
      r.rows.push_back({std::string("H_small_u"), row.u, 0.0, 0.0, row.max_abs_H, row.quadrature_err});
      worst_H = std::max(worst_H, row.max_abs_H);
    }
    for (int i = 0; i < 10; ++i) {
      const double v = sw.T / 4 * i / 9.0, w = sw.T / 4 * (9 - i) / 9.0;
      const QuadratureResult I = I_integral(v, w, sw, 1e-12);
      const double val = std::abs(I.value) / (sw.M * sw.T);
      r.rows.push_back({std::string("I_over_MT"), 0.0, v, w, val, I.err_estimate / (sw.M * sw.T)});
      worst_I = std::max(worst_I, val);
    }
    r.notes.push_back("max |H| for u <= 0.3: " + fmt(worst_H) + ", max |I|/(MT) for v, w <= T/4: " + fmt(worst_I));
    check(r, worst_H <= 1e-8, "smallx_decay");
    check(r, worst_I <= 1e-8, "I_small_parameters");
    return r;
  }
  r.columns = {"x", "y", "T", "M", "H_direct", "H_asym", "abs_res", "rel_res", "quad_err"};
  std::vector<std::pair<double, double>> grid;
  for (double k : {2.0, 4.0, 6.0, 8.0, 10.0})
    for (double y : {1.0, 2.0, 4.0, 8.0}) grid.push_back({4.0 * k * sw.T / (y + 1.0 / y), y});
  std::vector<BesselCompareReport> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = compare_H_asymptotic(grid[i].first, grid[i].second, sw, cfg.tol); });
  double worst = 0;
  for (const auto& b : out) {
    r.rows.push_back({b.x, b.y, sw.T, sw.M, b.H_direct, b.H_asymptotic, b.abs_residual, b.rel_residual, b.quadrature_err});
    const bool ok = b.rel_residual <= 1e-3 || b.abs_residual <= 10.0 * b.quadrature_err;
    if (!ok) worst = std::max(worst, b.rel_residual);
    check(r, ok && b.converged, "bessel_route_agreement");
  }
  r.notes.push_back(std::to_string(out.size()) + " pairs compared");
  return r;
}

Report kuznetsov_verify(const RunConfig& cfg) {
  Report r;
  const SpectralWeight sw{cfg.T, cfg.M};
  const Spectrum s = load_forms(cfg.spectrum);
  r.columns = {"m", "n", "T", "M", "spectral", "eisenstein", "diagonal", "kloosterman", "residual", "rel_residual",
               "spectral_tail", "c_tail", "quad_err", "forms", "C_max", "tail_warning"};
  const std::vector<std::pair<i64, i64>> pairs = {{1, 1}, {1, 2}, {2, 3}};
  for (const auto& [m, n] : pairs) {
    const TraceReport t = trace_residual(m, n, sw, s.forms, cfg.cmax, cfg.tol);
    r.rows.push_back({m, n, sw.T, sw.M, t.spectral, t.eisenstein, t.diagonal, t.kloosterman, t.residual,
                      t.relative_residual(), t.spectral_tail, t.c_tail, t.quad_err,
                      static_cast<std::int64_t>(t.forms_used), t.C_max, static_cast<std::int64_t>(t.tail_warning)});
    check(r, t.relative_residual() <= 0.02, "kuznetsov_relative_residual");
    check(r, t.residual <= t.error_bar(), "kuznetsov_bars_cover_residual");
  }
  return r;
}

Report decompose(const RunConfig& cfg) {
  Report r;
  const SpectralWeight sw{cfg.T, cfg.M};
  const Spectrum s = load_forms(cfg.spectrum);
  r.columns = {"seed", "N", "S", "T_eis", "D", "P", "residual", "rel_residual", "D_main", "P_tail", "spectral_tail",
               "c_used", "p_bound_rhs"};
  for (int i = 0; i < cfg.trials; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    const Sequence seq = Sequence::random(cfg.N, seed, true);
    const DecompositionReport d = decomposition(seq, sw, s.forms, cfg.tol);
    const double pb = p_bound_rhs(seq, sw, cfg.qcap, cfg.ccap);
    r.rows.push_back({static_cast<std::int64_t>(seed), cfg.N, d.S, d.T_eis, d.D, d.P, d.residual, d.relative_residual(),
                      d.D_main, d.P_tail, d.spectral_tail, d.c_used, pb});
    check(r, d.relative_residual() <= 0.02, "decomposition_residual");
    check(r, std::abs(d.D - d.D_main) <= d.residual + d.P_tail + d.spectral_tail, "diagonal_main_term");
  }
  return r;
}

Report sieve_experiment(const RunConfig& cfg) {
  Report r;
  const SpectralWeight sw{cfg.T, cfg.M};
  const Spectrum s = load_forms(cfg.spectrum);
  std::vector<i64> Ns = cfg.N > 0 ? std::vector<i64>{cfg.N} : std::vector<i64>{16, 64, 256};
  const SuiteSummary sum = sieve_suite(Ns, cfg.trials, cfg.seed, sw, s.forms);
  r.columns = {"kind", "seed", "N", "T", "M", "gamma", "tau", "v", "C", "lhs", "rhs", "ratio"};
  bool finite = true;
  for (const auto& x : sum.rows) {
    r.rows.push_back({x.kind, static_cast<std::int64_t>(x.seed), x.N, x.T, x.M, x.gamma, x.tau, x.v, x.C, x.lhs, x.rhs, x.ratio});
    finite = finite && std::isfinite(x.ratio) && std::isfinite(x.lhs) && x.lhs >= 0.0;
  }
  r.notes.push_back("suite maxima: young " + fmt(sum.max_young) + " corollary " + fmt(sum.max_corollary) + " dirichlet " +
                    fmt(sum.max_dirichlet) + " diluo_first " + fmt(sum.max_diluo_first) + " diluo_second " +
                    fmt(sum.max_diluo_second));
  check(r, finite, "ratios_finite");
  check(r, sum.max_corollary <= 10.0, "corollary_ratio_bounded");
  check(r, sum.max_dirichlet <= 2.0 * kPi, "dirichlet_ratio_bounded");
  return r;
}

Report voronoi_verify(const RunConfig& cfg) {
  Report r;
  if (cfg.suite == "hankel") {
    const std::array<cplx, 3> lam{cplx(0, cfg.langlands), 0.0, cplx(0, -cfg.langlands)};
    const MellinHankel mh(HankelSetup::bump(lam, static_cast<double>(cfg.N)));
    const double y0 = 125.0 / static_cast<double>(cfg.N);
    std::vector<double> fit, chk;
    for (int i = 0; i < 10; ++i) {
      fit.push_back(y0 * std::pow(8.0, i / 9.0));
      chk.push_back(y0 * std::pow(8.0, (i + 0.5) / 10.0));
    }
    const KernelAsymptotics ka = calibrate_kernel(mh, 3, fit);
    std::ostringstream side;
    ka.write(side);
    r.sidecar = side.str();
    r.columns = {"y", "omega_mellin_re", "omega_mellin_im", "omega_kernel_re", "omega_kernel_im", "rel_dev"};
    for (double y : chk)
      for (double sg : {1.0, -1.0}) {
        const cplx a = mh(sg * y);
        const QuadratureResult k = hankel_kernel_route(sg * y, mh.setup(), ka);
        const double rel = std::abs(k.value - a) / std::abs(a);
        r.rows.push_back({sg * y, a.real(), a.imag(), k.value.real(), k.value.imag(), rel});
        check(r, k.converged() && rel <= 1e-3, "hankel_route_agreement");
      }
    r.notes.push_back("kernel fit residual " + fmt(ka.fit_residual) + ", x_min " + fmt(ka.x_min));
    return r;
  }
  const GL3Form f = load_gl3(cfg, 1'000'000);
  const MellinHankel mh(HankelSetup::bump(f.langlands(), static_cast<double>(cfg.N)));
  r.columns = {"c", "alpha", "m", "direct_re", "direct_im", "dual_re", "dual_im", "residual", "relative", "tail_change",
               "omega_threshold", "n_max"};
  for (i64 c = 1; c <= cfg.cmax; ++c) {
    const VoronoiReport v = voronoi_residual(f, 1, 1, c, mh, cfg.tol);
    r.rows.push_back({c, std::int64_t{1}, std::int64_t{1}, v.direct.real(), v.direct.imag(), v.dual.real(), v.dual.imag(),
                      v.residual, v.relative, v.tail_change, v.omega_threshold, v.n_max.front()});
    check(r, v.relative <= 1e-2, "voronoi_relative_residual");
    check(r, v.tail_change < cfg.tol, "voronoi_dual_tail");
  }
  return r;
}

Report moment_demo_suite(const RunConfig& cfg) {
  Report r;
  const SpectralWeight sw{cfg.T, cfg.M};
  const Spectrum s = load_forms(cfg.spectrum);
  const GL3Form f = load_gl3(cfg, std::max<std::int64_t>(2 * cfg.N, cfg.n1) * cfg.n1 + 1);
  const MomentReport m = moment_demo(f, s.forms, sw, cfg.N, cfg.n1, cfg.tol);
  r.columns = {"N", "n1", "T", "M", "S", "T_eis", "majorant", "ratio", "coeff_norm", "quad_err"};
  r.rows.push_back({cfg.N, cfg.n1, sw.T, sw.M, m.S, m.T_eis, m.majorant, m.ratio, m.coeff_norm, m.quad_err});
  check(r, m.S >= 0.0 && m.T_eis >= -m.quad_err && std::isfinite(m.ratio), "moment_values_finite_nonnegative");
  return r;
}

}  // namespace

void RunConfig::validate() const {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end())
    throw UsageError("unknown subcommand: " + subcommand);
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  if (!(T >= 1.0)) throw UsageError("--T must be at least 1");
  if (!(M >= 1.0 && M <= T)) throw UsageError("--M must lie in [1, T]");
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
  if (cmax < 1) throw UsageError("--cmax must be positive");
  if (N < 0) throw UsageError("--N must be nonnegative");
  if (trials < 1) throw UsageError("--trials must be positive");
  if (n1 < 1) throw UsageError("--n1 must be positive");
  if (!(qcap > 0.0) || !(ccap > 0.0)) throw UsageError("--qcap and --ccap must be positive");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  return {{"subcommand", subcommand},
          {"T", fmt(T)},
          {"M", fmt(M)},
          {"N", std::to_string(N)},
          {"cmax", std::to_string(cmax)},
          {"tol", fmt(tol)},
          {"seed", std::to_string(seed)},
          {"spectrum", spectrum},
          {"gl3", gl3},
          {"out", out},
          {"format", format},
          {"qcap", fmt(qcap)},
          {"ccap", fmt(ccap)},
          {"trials", std::to_string(trials)},
          {"suite", suite},
          {"n1", std::to_string(n1)},
          {"langlands", fmt(langlands)},
          {"threads", std::to_string(thread_count())}};
}

RunConfig defaults_for(const std::string& sub) {
  RunConfig c;
  c.subcommand = sub;
  c.T = 14;
  c.M = 4;
  c.tol = 1e-10;
  c.cmax = 128;
  c.N = 32;
  c.spectrum = data_path("maass_spectrum.txt");
  if (sub == "identity-check") {
  } else if (sub == "weil-scan") {
    c.cmax = 1024;
    c.N = 8;
  } else if (sub == "bessel-compare") {
    c.T = 50;
    c.M = 8;
    c.suite = "compare";
  } else if (sub == "kuznetsov-verify") {
  } else if (sub == "decompose") {
  } else if (sub == "sieve-experiment") {
    c.N = 0;
    c.trials = 100;
  } else if (sub == "voronoi-verify") {
    c.N = 16;
    c.cmax = 3;
    c.tol = 1e-8;
    c.suite = "identity";
    c.langlands = 0.5;
    c.spectrum = data_path("maass_t9p53.txt");
  } else if (sub == "moment-demo") {
  } else {
    throw UsageError("unknown subcommand: " + sub);
  }
  return c;
}

Report run(const RunConfig& cfg) {
  cfg.validate();
  Report r;
  const std::string& s = cfg.subcommand;
  if (s == "identity-check") r = identity_check(cfg);
  else if (s == "weil-scan") r = weil_scan(cfg);
  else if (s == "bessel-compare") {
    if (cfg.suite != "compare" && cfg.suite != "decay") throw UsageError("bessel-compare --suite must be compare or decay");
    r = bessel_compare(cfg);
  } else if (s == "kuznetsov-verify") r = kuznetsov_verify(cfg);
  else if (s == "decompose") {
    if (cfg.N < 1) throw UsageError("--N must be positive");
    r = decompose(cfg);
  } else if (s == "sieve-experiment") r = sieve_experiment(cfg);
  else if (s == "voronoi-verify") {
    if (cfg.suite != "identity" && cfg.suite != "hankel") throw UsageError("voronoi-verify --suite must be identity or hankel");
    if (cfg.N < 1) throw UsageError("--N must be positive");
    r = voronoi_verify(cfg);
  } else {
    if (cfg.N < 1) throw UsageError("--N must be positive");
    r = moment_demo_suite(cfg);
  }
  r.config = cfg.echo();
  return r;
}

namespace {
std::string csv_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15e", std::get<double>(c));
  return buf;
}

std::string failure_list(const Report& r) {
  std::string s;
  for (const auto& f : r.failures) s += (s.empty() ? "" : ";") + f;
  return s;
}
}  // namespace

void write_report(std::ostream& out, const Report& r, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    nlohmann::ordered_json cfg;
    cfg["record"] = "config";
    for (const auto& [k, v] : r.config) cfg[k] = v;
    arr.push_back(cfg);
    for (const auto& row : r.rows) {
      nlohmann::ordered_json rec;
      rec["record"] = "row";
      for (std::size_t i = 0; i < row.size(); ++i)
        std::visit([&](const auto& v) { rec[r.columns[i]] = v; }, row[i]);
      arr.push_back(rec);
    }
    for (const auto& n : r.notes) arr.push_back({{"record", "note"}, {"text", n}});
    arr.push_back({{"record", "status"}, {"status", r.passed() ? "pass" : "fail"}, {"failures", failure_list(r)}});
    out << arr.dump(1) << "\n";
    return;
  }
  for (const auto& [k, v] : r.config) out << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
  out << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
  for (const auto& n : r.notes) out << "# " << n << "\n";
  out << "# status=" << (r.passed() ? "pass" : "fail") << " failures=" << failure_list(r) << "\n";
}

}  // namespace specpoint::cli
