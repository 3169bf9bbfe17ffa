#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "suites.hpp"

using namespace specpoint::cli;

namespace {

std::string usage_text() {
  std::string s = "usage: specpoint <subcommand> [flags]\nsubcommands:";
  for (const auto& c : kSubcommands) s += " " + c;
  return s + "\nrun 'specpoint --help' for the flag list\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << usage_text();
    return 2;
  }
  const std::string first = argv[1];
  if (first.rfind("-", 0) != 0 &&
      std::find(kSubcommands.begin(), kSubcommands.end(), first) == kSubcommands.end()) {
    std::cerr << "unknown subcommand: " << first << "\n" << usage_text();
    return 2;
  }

  RunConfig cfg;
  CLI::App app{"Spectral and sieve verification suites"};
  app.require_subcommand(1);
  for (const auto& name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--T", cfg.T, "spectral window centre");
    sub->add_option("--M", cfg.M, "spectral window width");
    sub->add_option("--N", cfg.N, "sequence length or weight scale");
    sub->add_option("--cmax", cfg.cmax, "largest modulus");
    sub->add_option("--tol", cfg.tol, "tolerance");
    sub->add_option("--seed", cfg.seed, "first RNG seed");
    sub->add_option("--spectrum", cfg.spectrum, "maass-spectrum file");
    sub->add_option("--gl3", cfg.gl3, "GL(3) coefficient CSV");
    sub->add_option("--out", cfg.out, "report path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--qcap", cfg.qcap, "q cutoff constant");
    sub->add_option("--ccap", cfg.ccap, "c cutoff constant");
    sub->add_option("--trials", cfg.trials, "number of seeds");
    sub->add_option("--suite", cfg.suite, "sub-suite");
    sub->add_option("--n1", cfg.n1, "first GL(3) index");
    sub->add_option("--langlands", cfg.langlands, "a in the parameters (ia, 0, -ia)");
  }

  // defaults first, then the parsed flags on top
  CLI::App* chosen = nullptr;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << usage_text();
    return 2;
  }
  for (CLI::App* s : app.get_subcommands()) chosen = s;
  RunConfig d = defaults_for(chosen->get_name());
  auto given = [&](const char* flag) { return chosen->count(flag) > 0; };
  if (given("--T")) d.T = cfg.T;
  if (given("--M")) d.M = cfg.M;
  if (given("--N")) d.N = cfg.N;
  if (given("--cmax")) d.cmax = cfg.cmax;
  if (given("--tol")) d.tol = cfg.tol;
  if (given("--seed")) d.seed = cfg.seed;
  if (given("--spectrum")) d.spectrum = cfg.spectrum;
  if (given("--gl3")) d.gl3 = cfg.gl3;
  if (given("--out")) d.out = cfg.out;
  if (given("--format")) d.format = cfg.format;
  if (given("--qcap")) d.qcap = cfg.qcap;
  if (given("--ccap")) d.ccap = cfg.ccap;
  if (given("--trials")) d.trials = cfg.trials;
  if (given("--suite")) d.suite = cfg.suite;
  if (given("--n1")) d.n1 = cfg.n1;
  if (given("--langlands")) d.langlands = cfg.langlands;

  Report r;
  try {
    r = run(d);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n" << usage_text();
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (d.out.empty()) {
    write_report(std::cout, r, d.format);
  } else {
    std::ofstream f(d.out);
    if (!f) {
      std::cerr << "cannot write " << d.out << "\n";
      return 3;
    }
    write_report(f, r, d.format);
    if (!r.sidecar.empty()) std::ofstream(d.out + ".kernel") << r.sidecar;
  }
  if (!r.sidecar.empty() && d.out.empty()) std::cerr << r.sidecar;
  for (const auto& f : r.failures) std::cerr << "contract failed: " << f << "\n";
  return r.passed() ? 0 : 1;
}
