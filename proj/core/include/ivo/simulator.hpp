#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ivo/collision_cone.hpp"
#include "ivo/geometry.hpp"
#include "ivo/noise_model.hpp"
#include "ivo/planner.hpp"

namespace ivo {

struct AgentConfig {
  int id = 0;
  Vec2 start;
  Vec2 goal;
  double radius = 0.5;
  PlannerParams planner;
  double sensor_range = 5.0;

  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

/// Non-reactive disc moving with constant velocity.
struct PassiveObstacle {
  Vec2 start;
  Vec2 velocity;
  double radius = 0.5;

  friend bool operator==(const PassiveObstacle&, const PassiveObstacle&) = default;
};

struct ScenarioConfig {
  std::string name;
  std::vector<AgentConfig> agents;
  std::vector<PassiveObstacle> obstacles;
  double dt = 0.1;
  int max_steps = 1000;
  double goal_tolerance = 0.1;
  NoiseModel noise;
  std::uint64_t seed = 1;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws ConfigError naming the violated invariant.
void validate(const ScenarioConfig& scenario);

/// Last two ego observations of one obstacle, oldest first.
class ObservationBuffer {
 public:
  /// Throws std::invalid_argument unless the stamp is newer than the latest one held.
  void push(const EgoObservation& obs);
  [[nodiscard]] bool complete() const { return prev_.has_value(); }
  [[nodiscard]] const std::optional<EgoObservation>& prev() const { return prev_; }
  [[nodiscard]] const std::optional<EgoObservation>& curr() const { return curr_; }

 private:
  std::optional<EgoObservation> prev_;
  std::optional<EgoObservation> curr_;
};

using ObservationBuffers = std::map<EntityId, ObservationBuffer>;

struct AgentState {
  Vec2 position;          // global; never handed to the planner
  Vec2 velocity;          // cumulative commanded velocity
  bool arrived = false;
  ObservationBuffers buffers;
};

struct WorldState {
  int step = 0;
  std::vector<AgentState> agents;
  std::vector<Vec2> obstacles;
};

using Rng = std::mt19937_64;

WorldState initial_world(const ScenarioConfig& scenario);

/// One independent noise stream per agent, derived from the scenario seed.
std::vector<Rng> make_agent_rngs(const ScenarioConfig& scenario);

/// Records this cycle's ego observations of everything within the agent's sensor range
/// into `buffers`, and returns a track for each obstacle seen on two consecutive cycles.
/// Obstacles that left the range are forgotten.
std::vector<ObstacleTrack> observe(const WorldState& world, std::size_t agent_index,
                                   const ScenarioConfig& scenario, Rng& rng,
                                   ObservationBuffers& buffers);

struct AgentSample {
  Vec2 position;
  Vec2 velocity;
  Vec2 u;
  bool feasible = true;
};

struct Frame {
  int step = 0;
  std::vector<AgentSample> agents;
  std::vector<Vec2> obstacles;
};

struct StepResult {
  WorldState world;
  Frame frame;
  std::vector<double> plan_time_us;  // per agent that planned this cycle
};

/// Advances the world by one cycle. Every agent plans against the pre-step world, then
/// all controls are applied together, so the result does not depend on agent order.
StepResult step(const WorldState& world, const ScenarioConfig& scenario,
                std::span<Rng> agent_rngs, int threads = 1);

enum class Outcome { kAllArrived, kTimeout, kCollision };

std::string to_string(Outcome outcome);

struct Metrics {
  double min_separation = 0.0;  // smallest centre distance over any scored pair
  double min_clearance = 0.0;   // smallest centre distance minus radius sum
  int steps = 0;
  std::vector<std::optional<int>> arrival_step;
  int infeasible_decisions = 0;
  double mean_plan_us = 0.0;
  double max_plan_us = 0.0;
  double p99_plan_us = 0.0;
  Outcome outcome = Outcome::kTimeout;
};

struct SimulationTrace {
  std::vector<Frame> frames;  // frames[0] is the initial state
  std::vector<double> plan_time_us;  // one entry per agent plan, in step order
  std::vector<double> step_plan_us;  // summed planning time of each step
  Metrics metrics;
};

struct RunOptions {
  int threads = 1;
};

/// Smallest centre distance and clearance over agent-agent and agent-obstacle pairs in
/// one frame. Returns +inf for both when there is no such pair.
std::pair<double, double> frame_separation(const Frame& frame, const ScenarioConfig& scenario);

/// Steps until every agent has arrived or max_steps is reached.
/// Throws ConfigError before stepping if the scenario is invalid.
SimulationTrace run(const ScenarioConfig& scenario, const RunOptions& options = {});

}  // namespace ivo
