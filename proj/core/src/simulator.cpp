#include "ivo/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "ivo/errors.hpp"

namespace ivo {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw ConfigError(what);
  }
}

Vec2 gaussian(Rng& rng, double sigma) {
  if (sigma <= 0.0) {
    return {};
  }
  std::normal_distribution<double> dist(0.0, sigma);
  const double x = dist(rng);
  const double y = dist(rng);
  return {x, y};
}

bool is_arrived(const Vec2& position, const Vec2& goal, double tolerance) {
  return norm(goal - position) <= tolerance;
}

template <typename Fn>
void for_each_index(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        fn(i);
      }
    });
  }
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) {
    return 0.0;
  }
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

}  // namespace

void validate(const ScenarioConfig& s) {
  require(std::isfinite(s.dt) && s.dt > 0.0, "dt > 0");
  require(s.max_steps >= 1, "max_steps >= 1");
  require(std::isfinite(s.goal_tolerance) && s.goal_tolerance > 0.0, "goal_tolerance > 0");
  require(!s.agents.empty(), "at least one agent");
  validate(s.noise);
  std::set<int> ids;
  for (const auto& a : s.agents) {
    const std::string who = "agent " + std::to_string(a.id) + ": ";
    require(ids.insert(a.id).second, who + "id unique");
    require(is_finite(a.start) && is_finite(a.goal), who + "start and goal finite");
    require(std::isfinite(a.radius) && a.radius > 0.0, who + "radius > 0");
    require(std::isfinite(a.sensor_range) && a.sensor_range > 0.0, who + "sensor_range > 0");
    try {
      validate(a.planner);
    } catch (const ConfigError& e) {
      throw ConfigError(who + e.what());
    }
  }
  for (std::size_t k = 0; k < s.obstacles.size(); ++k) {
    const auto& o = s.obstacles[k];
    const std::string who = "obstacle " + std::to_string(k) + ": ";
    require(is_finite(o.start) && is_finite(o.velocity), who + "start and velocity finite");
    require(std::isfinite(o.radius) && o.radius > 0.0, who + "radius > 0");
  }
}

void ObservationBuffer::push(const EgoObservation& obs) {
  if (curr_ && !(obs.timestamp > curr_->timestamp)) {
    throw std::invalid_argument("observation stamps must strictly increase");
  }
  prev_ = curr_;
  curr_ = obs;
}

WorldState initial_world(const ScenarioConfig& scenario) {
  WorldState w;
  w.agents.reserve(scenario.agents.size());
  for (const auto& a : scenario.agents) {
    AgentState st;
    st.position = a.start;
    st.arrived = is_arrived(a.start, a.goal, scenario.goal_tolerance);
    w.agents.push_back(std::move(st));
  }
  for (const auto& o : scenario.obstacles) {
    w.obstacles.push_back(o.start);
  }
  return w;
}

std::vector<Rng> make_agent_rngs(const ScenarioConfig& scenario) {
  std::vector<Rng> rngs;
  rngs.reserve(scenario.agents.size());
  const auto lo = static_cast<std::uint32_t>(scenario.seed & 0xffffffffu);
  const auto hi = static_cast<std::uint32_t>(scenario.seed >> 32);
  for (std::size_t i = 0; i < scenario.agents.size(); ++i) {
    std::seed_seq seq{lo, hi, static_cast<std::uint32_t>(i)};
    rngs.emplace_back(seq);
  }
  return rngs;
}

std::vector<ObstacleTrack> observe(const WorldState& world, std::size_t agent_index,
                                   const ScenarioConfig& scenario, Rng& rng,
                                   ObservationBuffers& buffers) {
  const auto& self_cfg = scenario.agents[agent_index];
  const Vec2 self = world.agents[agent_index].position;
  const double stamp = static_cast<double>(world.step) * scenario.dt;
  const double sigma = scenario.noise.sigma_ego_obs;

  std::vector<ObstacleTrack> tracks;
  std::set<EntityId> seen;

  auto sense = [&](EntityId id, const Vec2& global, double radius) {
    const Vec2 ego = global - self;
    if (norm(ego) > self_cfg.sensor_range) {
      return;
    }
    seen.insert(id);
    auto& buffer = buffers[id];
    buffer.push({ego + gaussian(rng, sigma), stamp});
    if (buffer.complete()) {
      tracks.push_back({id, *buffer.prev(), *buffer.curr(), radius});
    }
  };

  for (std::size_t j = 0; j < world.agents.size(); ++j) {
    if (j != agent_index) {
      sense({EntityKind::kAgent, scenario.agents[j].id}, world.agents[j].position,
            scenario.agents[j].radius);
    }
  }
  for (std::size_t k = 0; k < world.obstacles.size(); ++k) {
    sense({EntityKind::kPassive, static_cast<int>(k)}, world.obstacles[k],
          scenario.obstacles[k].radius);
  }
  std::erase_if(buffers, [&](const auto& entry) { return !seen.contains(entry.first); });
  // Constraint order then depends on identity only, not on where agents sit in the list.
  std::sort(tracks.begin(), tracks.end(),
            [](const ObstacleTrack& a, const ObstacleTrack& b) { return a.id < b.id; });
  return tracks;
}

StepResult step(const WorldState& world, const ScenarioConfig& scenario,
                std::span<Rng> agent_rngs, int threads) {
  const std::size_t n = world.agents.size();
  StepResult out;
  out.world = world;
  out.world.step = world.step + 1;

  std::vector<ControlDecision> decisions(n, ControlDecision{{}, true, 0.0, 0.0});
  std::vector<double> times(n, -1.0);

  for_each_index(n, threads, [&](std::size_t i) {
    if (world.agents[i].arrived) {
      return;
    }
    const auto& cfg = scenario.agents[i];
    const auto tracks = observe(world, i, scenario, agent_rngs[i], out.world.agents[i].buffers);
    const Vec2 goal_ego = cfg.goal - world.agents[i].position;
    PlannerParams params = cfg.planner;
    params.grid_rotation += grid_jitter(cfg.id);

    const auto t0 = std::chrono::steady_clock::now();
    decisions[i] = plan_control(world.agents[i].velocity, goal_ego, cfg.radius, tracks, params);
    const auto t1 = std::chrono::steady_clock::now();
    times[i] = std::chrono::duration<double, std::micro>(t1 - t0).count();
  });

  out.frame.step = out.world.step;
  out.frame.agents.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& agent = out.world.agents[i];
    const auto& cfg = scenario.agents[i];
    if (!agent.arrived) {
      agent.velocity = clamp_norm(agent.velocity + decisions[i].u, cfg.planner.v_max);
      agent.position += agent.velocity * scenario.dt;
      if (is_arrived(agent.position, cfg.goal, scenario.goal_tolerance)) {
        agent.arrived = true;
        agent.velocity = {};
      }
    }
    out.frame.agents[i] = {agent.position, agent.velocity, decisions[i].u, decisions[i].feasible};
    if (times[i] >= 0.0) {
      out.plan_time_us.push_back(times[i]);
    }
  }

  const double t = static_cast<double>(out.world.step) * scenario.dt;
  for (std::size_t k = 0; k < scenario.obstacles.size(); ++k) {
    out.world.obstacles[k] = scenario.obstacles[k].start + scenario.obstacles[k].velocity * t;
  }
  out.frame.obstacles = out.world.obstacles;
  return out;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kAllArrived:
      return "all-arrived";
    case Outcome::kTimeout:
      return "timeout";
    case Outcome::kCollision:
      return "collision";
  }
  return "unknown";
}

std::pair<double, double> frame_separation(const Frame& frame, const ScenarioConfig& scenario) {
  double min_sep = std::numeric_limits<double>::infinity();
  double min_clear = std::numeric_limits<double>::infinity();
  const auto& agents = frame.agents;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const double ri = scenario.agents[i].radius;
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      const double d = norm(agents[i].position - agents[j].position);
      min_sep = std::min(min_sep, d);
      min_clear = std::min(min_clear, d - ri - scenario.agents[j].radius);
    }
    for (std::size_t k = 0; k < frame.obstacles.size(); ++k) {
      const double d = norm(agents[i].position - frame.obstacles[k]);
      min_sep = std::min(min_sep, d);
      min_clear = std::min(min_clear, d - ri - scenario.obstacles[k].radius);
    }
  }
  return {min_sep, min_clear};
}

SimulationTrace run(const ScenarioConfig& scenario, const RunOptions& options) {
  validate(scenario);

  SimulationTrace trace;
  WorldState world = initial_world(scenario);
  auto rngs = make_agent_rngs(scenario);
  const std::size_t n = scenario.agents.size();

  Frame initial;
  initial.step = 0;
  for (const auto& a : world.agents) {
    initial.agents.push_back({a.position, a.velocity, {}, true});
  }
  initial.obstacles = world.obstacles;
  trace.frames.push_back(std::move(initial));

  auto& m = trace.metrics;
  m.arrival_step.assign(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    if (world.agents[i].arrived) {
      m.arrival_step[i] = 0;
    }
  }
  std::tie(m.min_separation, m.min_clearance) = frame_separation(trace.frames.front(), scenario);

  auto all_arrived = [&] {
    return std::all_of(world.agents.begin(), world.agents.end(),
                       [](const AgentState& a) { return a.arrived; });
  };

  while (world.step < scenario.max_steps && !all_arrived()) {
    auto result = step(world, scenario, rngs, options.threads);
    world = std::move(result.world);
    for (std::size_t i = 0; i < n; ++i) {
      if (world.agents[i].arrived && !m.arrival_step[i]) {
        m.arrival_step[i] = world.step;
      }
      if (!result.frame.agents[i].feasible) {
        ++m.infeasible_decisions;
      }
    }
    const auto [sep, clear] = frame_separation(result.frame, scenario);
    m.min_separation = std::min(m.min_separation, sep);
    m.min_clearance = std::min(m.min_clearance, clear);
    trace.plan_time_us.insert(trace.plan_time_us.end(), result.plan_time_us.begin(),
                              result.plan_time_us.end());
    trace.step_plan_us.push_back(
        std::accumulate(result.plan_time_us.begin(), result.plan_time_us.end(), 0.0));
    trace.frames.push_back(std::move(result.frame));
  }

  m.steps = world.step;
  if (!trace.plan_time_us.empty()) {
    m.mean_plan_us = std::accumulate(trace.plan_time_us.begin(), trace.plan_time_us.end(), 0.0) /
                     static_cast<double>(trace.plan_time_us.size());
    m.max_plan_us = *std::max_element(trace.plan_time_us.begin(), trace.plan_time_us.end());
    m.p99_plan_us = percentile(trace.plan_time_us, 0.99);
  }
  if (m.min_clearance < 0.0) {
    m.outcome = Outcome::kCollision;
  } else if (all_arrived()) {
    m.outcome = Outcome::kAllArrived;
  } else {
    m.outcome = Outcome::kTimeout;
  }
  return trace;
}

}  // namespace ivo
