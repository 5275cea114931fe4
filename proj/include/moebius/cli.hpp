#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "moebius/decision.hpp"
#include "moebius/lattice.hpp"

namespace moebius::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kInvalidConfig = 2,
  kInfeasibleBudget = 3,
};

/// Failure with a process exit code. `what()` is a single line starting with
/// a bracketed reason tag, e.g. "error[config]: ...".
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

/// Inclusive `start:stop:step` grid.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

/// Throws CliError(kInvalidConfig) on malformed text or a non-positive step.
Range parse_range(const std::string& text);

struct LatticeOptions {
  int n = 1;
  int m = 1;
  Topology topology = Topology::Moebius;
  bool dot = false;
};

struct SpectrumOptions {
  int n = 1;
  int m = 1;
  double t1 = 1.0;
  double t2 = 1.0;
  double epsilon = 0.0;
  std::size_t electrons = 0;  ///< resolved; defaults to N * M (half filling)
  Range sweep;
  Topology topology = Topology::Moebius;
};

struct CostOptions {
  std::filesystem::path contributions;
  std::filesystem::path costs;
  double t1 = 1.0;
  double t2 = 1.0;
  double delta = 0.5;
};

struct OptimizeOptions {
  CsrScenario scenario;  ///< file values with flag overrides applied, validated
  std::size_t oracle_points = 0;  ///< 0 = no oracle run
  bool csv = false;
  std::optional<std::filesystem::path> dump_config;
};

struct StaticsOptions {
  CsrScenario scenario;
  StaticsParam param = StaticsParam::Delta;
  Range range;
};

using Command =
    std::variant<LatticeOptions, SpectrumOptions, CostOptions, OptimizeOptions, StaticsOptions>;

struct RunConfig {
  Command command;
  std::optional<std::filesystem::path> out;
};

/// Validated configuration. `--help` throws CliError(kOk) carrying the help
/// text; every other problem throws CliError(kInvalidConfig).
RunConfig parse_args(std::span<const std::string> args);

/// Runs a validated config. Output goes to `config.out` (written to a
/// temporary sibling and renamed) or to `out`.
int run(const RunConfig& config, std::ostream& out);

/// Scenario JSON with keys N, M, a, k, beta, delta, p, w, lambda.
CsrScenario read_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const CsrScenario& s);

/// Rows of comma-separated decimals into a matrix; ragged input is rejected.
std::vector<std::vector<double>> read_csv_matrix(const std::filesystem::path& path);

/// Locale-independent, 12 significant digits, no negative zero.
std::string format_number(double value);

/// parse_args + run with error reporting on `err`; returns the exit code.
int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace moebius::cli
