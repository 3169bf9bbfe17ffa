#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace specpoint::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

extern const std::vector<std::string> kSubcommands;

struct RunConfig {
  std::string subcommand;
  double T = 0, M = 0;
  std::int64_t N = 0, cmax = 0;
  double tol = 0;
  std::uint64_t seed = 1;
  std::string spectrum, gl3, out, format = "csv";
  double qcap = 4, ccap = 4;
  int trials = 1;
  std::string suite;
  std::int64_t n1 = 1;
  double langlands = 0;  // voronoi-verify hankel suite: parameters (ia, 0, -ia)

  /// @throws UsageError on out-of-range values
  void validate() const;
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// The subcommand's defaults; every field is resolved.
/// @throws UsageError for an unknown subcommand
RunConfig defaults_for(const std::string& subcommand);

using Cell = std::variant<std::string, double, std::int64_t>;

struct Report {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;     // summary lines
  std::vector<std::string> failures;  // contract names that did not hold
  std::string sidecar;                // optional extra text written next to the report

  bool passed() const { return failures.empty(); }
};

/// Runs exactly one suite.
/// @throws DataError when an input file is missing or malformed
Report run(const RunConfig& cfg);

void write_report(std::ostream& out, const Report& r, const std::string& format);

}  // namespace specpoint::cli
