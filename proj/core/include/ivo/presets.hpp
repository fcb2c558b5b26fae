#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ivo/noise_analysis.hpp"
#include "ivo/simulator.hpp"

namespace ivo::presets {

/// Shared settings for the built-in scenarios.
struct CircleSettings {
  double circle_radius = 10.0;  // m
  double agent_radius = 0.5;    // m
  double sensor_range = 5.0;    // m
  PlannerParams planner;
  double dt = 0.1;
  int max_steps = 2000;
  double goal_tolerance = 0.2;
  std::uint64_t seed = 1;
};

/// `n` agents evenly spaced on a circle, each heading to the diametrically opposite point.
ScenarioConfig antipodal_circle(std::string name, int n, const CircleSettings& settings);

/// One agent crossing a field of five constant-velocity obstacles.
ScenarioConfig single5();
ScenarioConfig antipodal6();
ScenarioConfig circle10();
ScenarioConfig circle50();

/// Circle preset used by the cycle-time benchmark for `n` agents.
ScenarioConfig bench_circle(int n);

/// Head-on operating point with equally noisy obstacle positions for both methods; the
/// state-based path also carries agent pose/velocity and obstacle velocity noise.
NoiseStudy matched_noise();
/// Same operating point with no noise at all.
NoiseStudy zero_noise();
/// Same operating point with noise on the agent's own state only.
NoiseStudy agent_noise_only();

std::vector<std::string> names();
std::vector<std::string> noise_study_names();

/// Built-in scenario by name, or nullopt.
std::optional<ScenarioConfig> by_name(std::string_view name);
std::optional<NoiseStudy> noise_study_by_name(std::string_view name);

}  // namespace ivo::presets
