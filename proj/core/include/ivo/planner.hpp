#pragma once

#include <span>
#include <vector>

#include "ivo/collision_cone.hpp"
#include "ivo/geometry.hpp"

namespace ivo {

/// How candidates are ranked when none satisfies every cone constraint.
enum class InfeasibleFallback {
  /// cost + penalty * sum of violations
  kLeastViolation,
  /// cost + penalty * sum of violation / max(time_to_contact, ttc_floor)^2
  kUrgencyWeighted,
};

struct PlannerParams {
  double lambda = 0.1;              // weight on |u|^2
  double v_max = 1.0;               // m/s
  double u_max = 0.5;               // m/s, largest velocity change per cycle
  int n_radial = 8;
  int n_angular = 32;
  bool approaching_filter = true;   // receding obstacles impose no constraint
  double infeasible_penalty = 1e3;
  double grid_rotation = 0.0;       // rad, applied to every polar grid angle
  double safety_margin = 0.0;       // m, added to the combined radius of every constraint
  InfeasibleFallback fallback = InfeasibleFallback::kUrgencyWeighted;
  double ttc_floor = 0.1;           // s

  friend bool operator==(const PlannerParams&, const PlannerParams&) = default;
};

/// Throws ConfigError naming the first violated bound.
void validate(const PlannerParams& params);

struct ControlDecision {
  Vec2 u;
  bool feasible = false;
  double cost = 0.0;
  double worst_violation = 0.0;
};

/// Cone constraint for one tracked obstacle, in the planning agent's ego frame.
struct ConeConstraint {
  Vec2 position;           // r
  Vec2 relative_velocity;  // obstacle velocity relative to the agent before applying u
  double combined_radius = 0.0;
};

struct CandidateScore {
  double cost = 0.0;
  double total_violation = 0.0;
  double worst_violation = 0.0;
  double urgency = 0.0;  // violations weighted by inverse squared time to contact

  [[nodiscard]] bool feasible() const { return total_violation == 0.0; }
};

/// Deterministic per-agent rotation of the control grid, (id mod 7) * 1e-4 rad.
double grid_jitter(int agent_id);

Vec2 desired_velocity(const Vec2& goal_ego, double v_max);

/// |v_desired - (v_r + u)|^2 + lambda |u|^2
double control_cost(const Vec2& u, const Vec2& v_r, const Vec2& v_desired, double lambda);

/// Every control the planner considers, in evaluation order: the null control, the
/// clamped unconstrained optimum, then the polar grid (radius-major). All are clamped
/// so that |u| <= u_max and |v_r + u| <= v_max.
std::vector<Vec2> candidate_controls(const Vec2& v_r, const Vec2& v_desired,
                                     const PlannerParams& params);

/// Builds one constraint per track from its finite-difference relative velocity. The
/// combined radius is agent_radius + track radius + safety_margin.
std::vector<ConeConstraint> build_constraints(std::span<const ObstacleTrack> tracks,
                                              double agent_radius, double safety_margin = 0.0);

CandidateScore score_candidate(const Vec2& u, const Vec2& v_r, const Vec2& v_desired,
                               std::span<const ConeConstraint> constraints,
                               const PlannerParams& params);

/// Chooses the velocity change for one agent for one cycle.
///
/// Returns the feasible candidate of least cost; if no candidate satisfies every cone
/// constraint, returns the one minimising cost + infeasible_penalty * (fallback term)
/// with `feasible` cleared. Ties go to lower cost, then smaller |u|, then the most
/// clockwise candidate relative to the desired velocity change.
ControlDecision plan_control(const Vec2& v_r, const Vec2& goal_ego, double agent_radius,
                             std::span<const ObstacleTrack> tracks,
                             const PlannerParams& params);

}  // namespace ivo
