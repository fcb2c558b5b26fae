#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/scenario_io.hpp"
#include "ivo/errors.hpp"
#include "ivo/presets.hpp"

namespace {

using namespace ivo;
using namespace ivo::cli;

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "out";
  bool quiet = false;
};

int export_presets(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& name : presets::names()) {
    std::ofstream(dir / (name + ".json"), std::ios::binary) << io::emit_scenario(*presets::by_name(name));
  }
  for (const auto& name : presets::noise_study_names()) {
    std::ofstream(dir / (name + ".json"), std::ios::binary)
        << io::emit_noise_study(*presets::noise_study_by_name(name));
  }
  return kExitOk;
}

int show_preset(const std::string& name) {
  if (auto s = presets::by_name(name)) {
    std::cout << io::emit_scenario(*s);
    return kExitOk;
  }
  if (auto n = presets::noise_study_by_name(name)) {
    std::cout << io::emit_noise_study(*n);
    return kExitOk;
  }
  std::cerr << "ivo: unknown preset '" << name << "'\n";
  return kExitIoOrUsage;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Ego-frame velocity-obstacle planner: simulation, benchmarks and noise studies"};
  app.require_subcommand(1);

  GlobalFlags global;
  app.add_option("--seed", global.seed, "Seed for every random stream (overrides the file)");
  app.add_option("--out", global.out, "Output directory")->capture_default_str();
  app.add_flag("-q,--quiet", global.quiet, "Suppress the summary on stdout");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario file or preset");
  simulate->fallthrough();
  simulate->add_option("scenario", sim.scenario, "Scenario file or preset name")->required();
  simulate->add_option("--max-steps", sim.max_steps, "Override max_steps");
  simulate->add_option("--sigma-ego-obs", sim.sigma_ego_obs, "Override ego observation noise (m)");
  simulate->add_option("--threads", sim.threads, "Worker threads for planning")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  NoiseCompareOptions noise;
  std::optional<std::size_t> noise_samples;
  auto* noise_cmd = app.add_subcommand("noise-compare", "Monte-Carlo cone-error comparison");
  noise_cmd->fallthrough();
  noise_cmd->add_option("study", noise.study, "Noise study file or preset name")
      ->default_val("matched_noise");
  noise_cmd->add_option("--samples", noise_samples, "Override the sample count");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Planning cycle time on N-agent circles");
  bench_cmd->fallthrough();
  bench_cmd->add_option("--agents", bench.agents, "Agent counts")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "Runs per agent count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads for planning")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Cone sign against brute-force closest approach");
  oracle_cmd->fallthrough();
  oracle_cmd->add_option("--samples", oracle.samples, "Random cases")->capture_default_str();

  std::optional<std::filesystem::path> export_dir;
  std::optional<std::string> show_name;
  auto* presets_cmd = app.add_subcommand("presets", "List, show or export built-in presets");
  presets_cmd->add_option("--export", export_dir, "Write every preset as JSON into this directory");
  presets_cmd->add_option("--show", show_name, "Print one preset as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitIoOrUsage;
  }

  if (*simulate) {
    sim.out_dir = global.out;
    sim.seed = global.seed;
    const RunReport report = cmd_simulate(sim);
    if (!global.quiet) {
      print_report(std::cout, report);
    }
    return exit_code(report.outcome);
  }
  if (*noise_cmd) {
    noise.out_dir = global.out;
    noise.seed = global.seed;
    noise.samples = noise_samples;
    const NoiseReport report = cmd_noise_compare(noise);
    if (!global.quiet) {
      print_report(std::cout, report);
    }
    return kExitOk;
  }
  if (*bench_cmd) {
    const auto rows = cmd_bench(bench);
    const std::string table = bench_csv(rows);
    std::filesystem::create_directories(global.out);
    std::ofstream(global.out / "bench.csv", std::ios::binary) << table;
    if (!global.quiet) {
      std::cout << table;
    }
    return kExitOk;
  }
  if (*oracle_cmd) {
    oracle.seed = global.seed.value_or(1);
    const OracleReport report = cmd_oracle_check(oracle);
    if (!global.quiet) {
      print_report(std::cout, report);
    }
    return report.mismatches == 0 ? kExitOk : kExitOracleMismatch;
  }
  if (*presets_cmd) {
    if (show_name) {
      return show_preset(*show_name);
    }
    if (export_dir) {
      return export_presets(*export_dir);
    }
    for (const auto& name : presets::names()) {
      std::cout << name << "\tscenario\n";
    }
    for (const auto& name : presets::noise_study_names()) {
      std::cout << name << "\tnoise study\n";
    }
    return kExitOk;
  }
  return kExitIoOrUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const io::ParseError& e) {
    std::cerr << "ivo: parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const ConfigError& e) {
    std::cerr << "ivo: invalid configuration: " << e.what() << "\n";
    return kExitValidationError;
  } catch (const std::exception& e) {
    std::cerr << "ivo: " << e.what() << "\n";
    return kExitIoOrUsage;
  }
}
