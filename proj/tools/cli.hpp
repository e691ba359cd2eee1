#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "einhom/solvers.hpp"

namespace einhom::cli {

enum class Command { Solve, Tables, Verify, Oracle, Plan };
enum class SolveMode { Jensen, Quartic, General };
enum class OutputFormat { Json, Csv, Text };

enum ExitCode : int { kOk = 0, kUsage = 1, kCertification = 2, kTableMismatch = 3 };

struct IntRange {
  int lo = 0;
  int hi = 0;
};
/// "a..b" or a single integer.
IntRange parse_range(const std::string& text);
std::vector<int> parse_blocks(const std::string& text);

struct RunConfig {
  Command command = Command::Solve;
  GroupFamily family = GroupFamily::Orthogonal;
  SolveMode mode = SolveMode::Quartic;
  int k1 = 0, k2 = 0;
  int k = 0, l = 0, s = 0;
  int p = 1;
  IntRange k_range{3, 20};
  IntRange l_range{1, 20};
  std::vector<int> blocks;
  std::optional<int> oracle_s;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::string> output_path;
  std::optional<std::string> input_path;
  double tolerance = default_residual_tolerance();
  Rational root_eps = default_root_eps();

  SolverOptions solver_options() const;
};

/// EINSTEIN_HOMOG_TOL when set and valid, otherwise the library default.
double tolerance_from_environment();

nlohmann::ordered_json spec_to_json(const SpaceSpec& spec);
SpaceSpec spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json solution_to_json(const EinsteinSolution& sol);
/// Exact parse of the decimal strings written by solution_to_json.
MetricParams metric_from_json(const SpaceSpec& spec, const nlohmann::json& params);
nlohmann::ordered_json solutions_to_json(const SpaceSpec& spec, const std::vector<EinsteinSolution>& sols,
                                         const std::vector<std::string>& notes = {});

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_tables(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_plan(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command; converts library exceptions into exit code 1.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and runs the command.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace einhom::cli
