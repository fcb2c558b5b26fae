#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli/scenario_io.hpp"
#include "ivo/collision_cone.hpp"
#include "ivo/errors.hpp"
#include "ivo/presets.hpp"
#include "ivo/tolerances.hpp"

namespace ivo::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kOracleBoundaryBand = 1e-6;
constexpr std::size_t kMaxReportedMismatches = 10;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw Error("write failed: " + path.string());
  }
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error("cannot create " + dir.string() + ": " + ec.message());
  }
}

// JSON has no infinities.
ordered_json finite_or_null(double x) {
  return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

double mean_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double p99_of(std::vector<double> xs) {
  if (xs.empty()) {
    return 0.0;
  }
  std::sort(xs.begin(), xs.end());
  return quantile(xs, 0.99);
}

ordered_json summary_json(const DistributionSummary& s) {
  ordered_json j;
  j["count"] = s.count;
  j["discarded"] = s.discarded;
  j["mean"] = s.mean;
  j["variance"] = s.variance;
  j["interval"] = {{"level", s.interval.level},
                   {"lo", s.interval.lo},
                   {"hi", s.interval.hi},
                   {"width", s.interval.width()}};
  j["bins"] = s.histogram.counts.size();
  return j;
}

}  // namespace

int exit_code(Outcome outcome) {
  switch (outcome) {
    case Outcome::kAllArrived:
      return kExitOk;
    case Outcome::kTimeout:
      return kExitTimeout;
    case Outcome::kCollision:
      return kExitCollision;
  }
  return kExitIoOrUsage;
}

ScenarioConfig resolve_scenario(const std::string& name_or_path) {
  if (std::filesystem::is_regular_file(name_or_path)) {
    return io::parse_scenario(name_or_path);
  }
  if (auto preset = presets::by_name(name_or_path)) {
    return *preset;
  }
  throw Error("no scenario file or preset named '" + name_or_path + "'");
}

NoiseStudy resolve_noise_study(const std::string& name_or_path) {
  if (std::filesystem::is_regular_file(name_or_path)) {
    return io::parse_noise_study(name_or_path);
  }
  if (auto preset = presets::noise_study_by_name(name_or_path)) {
    return *preset;
  }
  throw Error("no noise study file or preset named '" + name_or_path + "'");
}

std::string trajectory_csv(const SimulationTrace& trace, const ScenarioConfig& scenario) {
  std::ostringstream out;
  out << "step,id,x,y,vx,vy,ux,uy,feasible\n";
  for (const auto& frame : trace.frames) {
    for (std::size_t i = 0; i < frame.agents.size(); ++i) {
      const auto& a = frame.agents[i];
      out << frame.step << ',' << scenario.agents[i].id << ',' << io::format_double(a.position.x)
          << ',' << io::format_double(a.position.y) << ',' << io::format_double(a.velocity.x) << ','
          << io::format_double(a.velocity.y) << ',' << io::format_double(a.u.x) << ','
          << io::format_double(a.u.y) << ',' << (a.feasible ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string obstacles_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "step,index,x,y\n";
  for (const auto& frame : trace.frames) {
    for (std::size_t k = 0; k < frame.obstacles.size(); ++k) {
      out << frame.step << ',' << k << ',' << io::format_double(frame.obstacles[k].x) << ','
          << io::format_double(frame.obstacles[k].y) << '\n';
    }
  }
  return out.str();
}

std::string report_json(const RunReport& report) {
  const Metrics& m = report.metrics;
  ordered_json j;
  j["scenario"] = report.scenario.name;
  j["seed"] = report.scenario.seed;
  j["outcome"] = to_string(report.outcome);
  j["steps"] = m.steps;
  j["agents"] = report.scenario.agents.size();
  j["obstacles"] = report.scenario.obstacles.size();
  j["min_separation"] = finite_or_null(m.min_separation);
  j["min_clearance"] = finite_or_null(m.min_clearance);
  j["infeasible_decisions"] = m.infeasible_decisions;
  ordered_json arrivals = ordered_json::array();
  for (std::size_t i = 0; i < m.arrival_step.size(); ++i) {
    const auto& step = m.arrival_step[i];
    arrivals.push_back({{"id", report.scenario.agents[i].id},
                        {"step", step ? ordered_json(*step) : ordered_json(nullptr)}});
  }
  j["arrivals"] = arrivals;
  ordered_json files = ordered_json::array();
  for (const auto& f : report.files) {
    files.push_back(f.filename().string());
  }
  j["files"] = files;
  return j.dump(2) + "\n";
}

std::string timing_json(const RunReport& report) {
  const Metrics& m = report.metrics;
  ordered_json j;
  j["plans"] = report.trace.plan_time_us.size();
  j["mean_plan_us"] = m.mean_plan_us;
  j["p99_plan_us"] = m.p99_plan_us;
  j["max_plan_us"] = m.max_plan_us;
  j["mean_step_us"] = mean_of(report.trace.step_plan_us);
  return j.dump(2) + "\n";
}

RunReport cmd_simulate(const SimulateOptions& options) {
  ScenarioConfig scenario = resolve_scenario(options.scenario);
  if (options.seed) {
    scenario.seed = *options.seed;
  }
  if (options.max_steps) {
    scenario.max_steps = *options.max_steps;
  }
  if (options.sigma_ego_obs) {
    scenario.noise.sigma_ego_obs = *options.sigma_ego_obs;
  }
  try {
    validate(scenario);
  } catch (const io::ValidationError&) {
    throw;
  } catch (const ConfigError& e) {
    throw io::ValidationError(e.what());
  }

  RunReport report;
  report.scenario = scenario;
  report.trace = run(scenario, RunOptions{options.threads});
  report.metrics = report.trace.metrics;
  report.outcome = report.metrics.outcome;

  if (options.write_files) {
    prepare_dir(options.out_dir);
    const auto& dir = options.out_dir;
    report.files = {dir / "trajectory.csv", dir / "obstacles.csv", dir / "report.json",
                    dir / "timing.json", dir / "scenario_resolved.json"};
    write_file(report.files[0], trajectory_csv(report.trace, scenario));
    write_file(report.files[1], obstacles_csv(report.trace));
    write_file(report.files[2], report_json(report));
    write_file(report.files[3], timing_json(report));
    write_file(report.files[4], io::emit_scenario(scenario));
  }
  return report;
}

std::string distribution_csv(const DistributionSummary& summary) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count,cdf\n";
  const auto& h = summary.histogram;
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    out << io::format_double(h.edges[b]) << ',' << io::format_double(h.edges[b + 1]) << ','
        << h.counts[b] << ',' << io::format_double(summary.cdf[b + 1].p) << '\n';
  }
  return out.str();
}

std::string noise_report_json(const NoiseReport& report) {
  ordered_json j;
  j["study"] = report.study.name;
  j["samples"] = report.study.samples;
  j["seed"] = report.study.seed;
  j["vo"] = summary_json(report.comparison.vo);
  j["ivo"] = summary_json(report.comparison.ivo);
  j["width_ratio"] = finite_or_null(report.comparison.width_ratio());
  return j.dump(2) + "\n";
}

NoiseReport cmd_noise_compare(const NoiseCompareOptions& options) {
  NoiseReport report;
  report.study = resolve_noise_study(options.study);
  if (options.seed) {
    report.study.seed = *options.seed;
  }
  if (options.samples) {
    report.study.samples = *options.samples;
  }
  report.comparison = run_study(report.study);

  if (options.write_files) {
    prepare_dir(options.out_dir);
    const auto& dir = options.out_dir;
    report.files = {dir / "noise_report.json", dir / "noise_vo.csv", dir / "noise_ivo.csv"};
    write_file(report.files[0], noise_report_json(report));
    write_file(report.files[1], distribution_csv(report.comparison.vo));
    write_file(report.files[2], distribution_csv(report.comparison.ivo));
  }
  return report;
}

std::vector<BenchRow> cmd_bench(const BenchOptions& options) {
  if (options.repeats < 1) {
    throw ConfigError("bench: repeats >= 1");
  }
  std::vector<BenchRow> rows;
  for (int n : options.agents) {
    if (n < 1) {
      throw ConfigError("bench: agent count >= 1");
    }
    const ScenarioConfig scenario = presets::bench_circle(n);
    BenchRow row;
    row.agents = n;
    row.repeats = options.repeats;
    std::vector<double> agent_us;
    std::vector<double> step_us;
    for (int r = 0; r < options.repeats; ++r) {
      const SimulationTrace trace = run(scenario, RunOptions{options.threads});
      agent_us.insert(agent_us.end(), trace.plan_time_us.begin(), trace.plan_time_us.end());
      step_us.insert(step_us.end(), trace.step_plan_us.begin(), trace.step_plan_us.end());
      row.steps = trace.metrics.steps;
      row.outcome = trace.metrics.outcome;
    }
    row.plans = agent_us.size();
    row.mean_agent_us = mean_of(agent_us);
    row.max_agent_us = agent_us.empty() ? 0.0 : *std::max_element(agent_us.begin(), agent_us.end());
    row.p99_agent_us = p99_of(agent_us);
    row.mean_step_us = mean_of(step_us);
    row.p99_step_us = p99_of(std::move(step_us));
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "agents,repeats,steps,outcome,plans,mean_agent_us,p99_agent_us,max_agent_us,"
         "mean_step_us,p99_step_us\n";
  char buf[64];
  const auto fixed = [&buf](double x) {
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out << r.agents << ',' << r.repeats << ',' << r.steps << ',' << to_string(r.outcome) << ','
        << r.plans << ',' << fixed(r.mean_agent_us) << ',' << fixed(r.p99_agent_us) << ','
        << fixed(r.max_agent_us) << ',' << fixed(r.mean_step_us) << ',' << fixed(r.p99_step_us)
        << '\n';
  }
  return out.str();
}

OracleVerdict classify_oracle_case(const OracleCase& c) {
  const double speed = norm(c.v);
  const bool predicted = on_collision_course(c.r, c.v, c.radius);

  bool actual = false;
  if (norm(c.r) <= c.radius) {
    actual = true;
  } else if (speed >= tol::kDegenerateSpeed) {
    if (std::abs(cone_value(c.r, c.v, c.radius)) <= kOracleBoundaryBand) {
      return OracleVerdict::kBoundary;
    }
    // The horizon comfortably covers the closest approach time |r.v| / |v|^2 <= |r| / |v|.
    const double horizon = 2.0 * norm(c.r) / speed + 1.0;
    const double dt = 1e-3 / speed;
    actual = min_separation(c.r, c.v, horizon, dt).d_star <= c.radius;
  }
  return predicted == actual ? OracleVerdict::kMatch : OracleVerdict::kMismatch;
}

OracleReport cmd_oracle_check(const OracleOptions& options) {
  if (options.samples < 1) {
    throw ConfigError("oracle-check: samples >= 1");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  std::uniform_real_distribution<double> vel(-2.0, 2.0);
  std::uniform_real_distribution<double> rad(0.1, 3.0);

  OracleReport report;
  report.samples = options.samples;
  for (std::size_t i = 0; i < options.samples; ++i) {
    OracleCase c;
    c.r.x = pos(rng);
    c.r.y = pos(rng);
    c.v.x = vel(rng);
    c.v.y = vel(rng);
    c.radius = rad(rng);
    if (norm(c.r) <= c.radius) {
      ++report.overlapping;
    }
    switch (classify_oracle_case(c)) {
      case OracleVerdict::kMatch:
        ++report.matches;
        break;
      case OracleVerdict::kBoundary:
        ++report.boundary;
        break;
      case OracleVerdict::kMismatch:
        ++report.mismatches;
        if (report.mismatch_cases.size() < kMaxReportedMismatches) {
          report.mismatch_cases.push_back(c);
        }
        break;
    }
  }
  return report;
}

void print_report(std::ostream& out, const RunReport& report) {
  const Metrics& m = report.metrics;
  out << "scenario " << report.scenario.name << ": " << to_string(report.outcome) << " after "
      << m.steps << " steps\n"
      << "  min separation " << m.min_separation << " m, min clearance " << m.min_clearance
      << " m\n"
      << "  infeasible decisions " << m.infeasible_decisions << "\n"
      << "  plan time mean " << m.mean_plan_us << " us, p99 " << m.p99_plan_us << " us, max "
      << m.max_plan_us << " us\n";
  for (const auto& f : report.files) {
    out << "  wrote " << f.string() << "\n";
  }
}

void print_report(std::ostream& out, const NoiseReport& report) {
  const auto& c = report.comparison;
  const auto line = [&out](const char* label, const DistributionSummary& s) {
    out << "  " << label << " mean " << s.mean << ", " << s.interval.level * 100.0
        << "% interval [" << s.interval.lo << ", " << s.interval.hi << "], width "
        << s.interval.width() << ", discarded " << s.discarded << "\n";
  };
  out << "noise study " << report.study.name << " (" << report.study.samples << " samples)\n";
  line("vo ", c.vo);
  line("ivo", c.ivo);
  out << "  width ratio ivo/vo " << c.width_ratio() << "\n";
  for (const auto& f : report.files) {
    out << "  wrote " << f.string() << "\n";
  }
}

void print_report(std::ostream& out, const OracleReport& report) {
  out << "oracle check: " << report.samples << " samples, " << report.matches << " match, "
      << report.mismatches << " mismatch, " << report.boundary << " boundary, "
      << report.overlapping << " overlapping\n";
  for (const auto& c : report.mismatch_cases) {
    out << "  mismatch r=(" << io::format_double(c.r.x) << ", " << io::format_double(c.r.y)
        << ") v=(" << io::format_double(c.v.x) << ", " << io::format_double(c.v.y)
        << ") R=" << io::format_double(c.radius) << "\n";
  }
}

}  // namespace ivo::cli
