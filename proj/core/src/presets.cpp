#include "ivo/presets.hpp"

#include <cmath>
#include <numbers>

namespace ivo::presets {
namespace {

CircleSettings default_settings() {
  CircleSettings s;
  s.planner.v_max = 1.0;
  s.planner.u_max = 0.5;
  s.planner.lambda = 0.1;
  s.planner.safety_margin = 0.3;
  s.sensor_range = 6.0;
  return s;
}

}  // namespace

ScenarioConfig antipodal_circle(std::string name, int n, const CircleSettings& settings) {
  ScenarioConfig s;
  s.name = std::move(name);
  s.dt = settings.dt;
  s.max_steps = settings.max_steps;
  s.goal_tolerance = settings.goal_tolerance;
  s.seed = settings.seed;
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
    const Vec2 start{settings.circle_radius * std::cos(angle),
                     settings.circle_radius * std::sin(angle)};
    AgentConfig a;
    a.id = k;
    a.start = start;
    a.goal = -start;
    a.radius = settings.agent_radius;
    a.planner = settings.planner;
    a.sensor_range = settings.sensor_range;
    s.agents.push_back(a);
  }
  return s;
}

ScenarioConfig single5() {
  const CircleSettings settings = default_settings();
  ScenarioConfig s;
  s.name = "single5";
  s.dt = settings.dt;
  s.max_steps = 1000;
  s.goal_tolerance = settings.goal_tolerance;
  s.seed = settings.seed;

  AgentConfig a;
  a.id = 0;
  a.start = {-10.0, 0.0};
  a.goal = {10.0, 0.0};
  a.radius = settings.agent_radius;
  a.planner = settings.planner;
  a.sensor_range = settings.sensor_range;
  s.agents.push_back(a);

  // Each obstacle's path crosses the agent's straight-line path near the time the agent
  // would get there.
  s.obstacles = {
      {{-5.0, 5.0}, {0.0, -1.0}, 0.5},
      {{0.0, -6.0}, {0.0, 0.6}, 0.5},
      {{8.0, 0.0}, {-0.5, 0.0}, 0.5},
      {{5.0, 7.0}, {0.0, -0.5}, 0.5},
      {{2.0, -8.5}, {0.2, 0.85}, 0.5},
  };
  return s;
}

ScenarioConfig antipodal6() { return antipodal_circle("antipodal6", 6, default_settings()); }

ScenarioConfig circle10() { return antipodal_circle("circle10", 10, default_settings()); }

ScenarioConfig circle50() {
  CircleSettings settings = default_settings();
  settings.circle_radius = 25.0;
  settings.max_steps = 4000;
  return antipodal_circle("circle50", 50, settings);
}

ScenarioConfig bench_circle(int n) {
  CircleSettings settings = default_settings();
  // Keep neighbour spacing on the circle at least that of circle50.
  settings.circle_radius = std::max(10.0, 25.0 * n / 50.0);
  settings.max_steps = 4000;
  return antipodal_circle("circle" + std::to_string(n), n, settings);
}

namespace {

NoiseStudy head_on_study(std::string name) {
  NoiseStudy study;
  study.name = std::move(name);
  study.truth.agent_pos = {0.0, 0.0};
  study.truth.agent_vel = {1.0, 0.0};
  study.truth.obs_pos = {4.0, 0.0};
  study.truth.obs_vel = {-1.0, 0.0};
  study.truth.radius = 1.0;
  study.truth.delta = 0.1;
  study.samples = 100000;
  study.level = 0.99;
  study.seed = 7;
  return study;
}

}  // namespace

NoiseStudy matched_noise() {
  NoiseStudy study = head_on_study("matched_noise");
  study.noise.sigma_agent_pos = 0.05;
  study.noise.sigma_agent_vel = 0.2;
  study.noise.sigma_obs_pos = 0.01;
  study.noise.sigma_obs_vel = 0.15;
  study.noise.sigma_ego_obs = study.noise.sigma_obs_pos;
  return study;
}

NoiseStudy zero_noise() { return head_on_study("zero_noise"); }

NoiseStudy agent_noise_only() {
  NoiseStudy study = head_on_study("agent_noise_only");
  study.noise.sigma_agent_pos = 0.1;
  study.noise.sigma_agent_vel = 0.1;
  return study;
}

std::vector<std::string> names() { return {"single5", "antipodal6", "circle10", "circle50"}; }

std::optional<ScenarioConfig> by_name(std::string_view name) {
  if (name == "single5") return single5();
  if (name == "antipodal6") return antipodal6();
  if (name == "circle10") return circle10();
  if (name == "circle50") return circle50();
  return std::nullopt;
}

std::vector<std::string> noise_study_names() {
  return {"matched_noise", "zero_noise", "agent_noise_only"};
}

std::optional<NoiseStudy> noise_study_by_name(std::string_view name) {
  if (name == "matched_noise") return matched_noise();
  if (name == "zero_noise") return zero_noise();
  if (name == "agent_noise_only") return agent_noise_only();
  return std::nullopt;
}

}  // namespace ivo::presets
