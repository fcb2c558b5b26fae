#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ivo/geometry.hpp"
#include "ivo/noise_analysis.hpp"
#include "ivo/simulator.hpp"

namespace ivo::cli {

/// Process exit status of the `ivo` binary.
enum ExitCode : int {
  kExitOk = 0,
  kExitIoOrUsage = 1,
  kExitParseError = 2,
  kExitValidationError = 3,
  kExitTimeout = 4,
  kExitCollision = 5,
  kExitOracleMismatch = 6,
};

int exit_code(Outcome outcome);

/// A preset name (see `ivo presets`) or a path to a scenario file.
ScenarioConfig resolve_scenario(const std::string& name_or_path);
NoiseStudy resolve_noise_study(const std::string& name_or_path);

struct SimulateOptions {
  std::string scenario;
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> max_steps;
  std::optional<double> sigma_ego_obs;
  int threads = 1;
  bool write_files = true;
};

struct RunReport {
  ScenarioConfig scenario;  // as run, after overrides
  Outcome outcome = Outcome::kTimeout;
  Metrics metrics;
  std::vector<std::filesystem::path> files;
  SimulationTrace trace;
};

/// Runs a scenario and writes trajectory.csv, obstacles.csv, report.json,
/// timing.json and scenario_resolved.json into the output directory.
RunReport cmd_simulate(const SimulateOptions& options);

std::string trajectory_csv(const SimulationTrace& trace, const ScenarioConfig& scenario);
std::string obstacles_csv(const SimulationTrace& trace);
/// Deterministic part of the run report; wall-clock timings live in timing_json.
std::string report_json(const RunReport& report);
std::string timing_json(const RunReport& report);

struct NoiseCompareOptions {
  std::string study;
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  bool write_files = true;
};

struct NoiseReport {
  NoiseStudy study;
  NoiseComparison comparison;
  std::vector<std::filesystem::path> files;
};

/// Writes noise_report.json plus histogram/CDF tables noise_vo.csv and noise_ivo.csv.
NoiseReport cmd_noise_compare(const NoiseCompareOptions& options);

std::string noise_report_json(const NoiseReport& report);
std::string distribution_csv(const DistributionSummary& summary);

struct BenchOptions {
  std::vector<int> agents = {1, 2, 6, 10, 20, 50};
  int repeats = 1;
  int threads = 1;
};

struct BenchRow {
  int agents = 0;
  int repeats = 0;
  int steps = 0;  // of the last repeat
  Outcome outcome = Outcome::kTimeout;
  std::size_t plans = 0;
  double mean_agent_us = 0.0;
  double p99_agent_us = 0.0;
  double max_agent_us = 0.0;
  double mean_step_us = 0.0;
  double p99_step_us = 0.0;
};

/// Planning wall time per agent-cycle and per step on the N-agent circle preset.
std::vector<BenchRow> cmd_bench(const BenchOptions& options);
std::string bench_csv(const std::vector<BenchRow>& rows);

struct OracleCase {
  Vec2 r;
  Vec2 v;
  double radius = 0.0;
};

enum class OracleVerdict { kMatch, kMismatch, kBoundary };

/// Compares the cone sign (approaching filter on) with a brute-force closest approach.
/// Cases with |f| <= 1e-6 are boundary cases; an overlapping pair matches when both
/// sides report a collision.
OracleVerdict classify_oracle_case(const OracleCase& c);

struct OracleOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

struct OracleReport {
  std::size_t samples = 0;
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t boundary = 0;
  std::size_t overlapping = 0;
  std::vector<OracleCase> mismatch_cases;  // first few, for diagnostics
};

OracleReport cmd_oracle_check(const OracleOptions& options);

void print_report(std::ostream& out, const RunReport& report);
void print_report(std::ostream& out, const NoiseReport& report);
void print_report(std::ostream& out, const OracleReport& report);

}  // namespace ivo::cli
