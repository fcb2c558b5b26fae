#include "ivo/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ivo/errors.hpp"
#include "ivo/tolerances.hpp"

namespace ivo {
namespace {

constexpr double kJitterStep = 1e-4;
constexpr int kJitterPeriod = 7;
constexpr int kMaxGrid = 10000;
constexpr double kTieTolerance = 1e-12;

void require(bool ok, const char* what) {
  if (!ok) {
    throw ConfigError(std::string("planner: ") + what);
  }
}

Vec2 clamp_control(const Vec2& u, const Vec2& v_r, const PlannerParams& params) {
  const Vec2 bounded = clamp_norm(u, params.u_max);
  return clamp_norm(v_r + bounded, params.v_max) - v_r;
}

Vec2 tie_break_reference(const Vec2& v_r, const Vec2& v_desired) {
  const Vec2 change = v_desired - v_r;
  if (norm(change) > tol::kDegenerateSpeed) {
    return change;
  }
  if (norm(v_desired) > tol::kDegenerateSpeed) {
    return v_desired;
  }
  return {1.0, 0.0};
}

struct Ranked {
  Vec2 u;
  CandidateScore score;
  double objective = 0.0;
  double length = 0.0;
  double angle = 0.0;
};

// Mirror-image grid points differ by rounding only, so near-equal values count as ties.
int compare(double a, double b) {
  const double slack = kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
  if (a < b - slack) return -1;
  if (a > b + slack) return 1;
  return 0;
}

bool better(const Ranked& a, const Ranked& b) {
  for (const auto& [x, y] : {std::pair{a.objective, b.objective}, std::pair{a.score.cost, b.score.cost},
                             std::pair{a.length, b.length}}) {
    if (const int c = compare(x, y); c != 0) {
      return c < 0;
    }
  }
  return a.angle < b.angle;
}

}  // namespace

void validate(const PlannerParams& p) {
  require(std::isfinite(p.lambda) && p.lambda >= 0.0, "lambda >= 0");
  require(std::isfinite(p.v_max) && p.v_max > 0.0, "v_max > 0");
  require(std::isfinite(p.u_max) && p.u_max > 0.0, "u_max > 0");
  require(p.n_radial >= 1 && p.n_radial <= kMaxGrid, "1 <= n_radial <= 10000");
  require(p.n_angular >= 4 && p.n_angular <= kMaxGrid, "4 <= n_angular <= 10000");
  require(std::isfinite(p.infeasible_penalty) && p.infeasible_penalty > 0.0,
          "infeasible_penalty > 0");
  require(std::isfinite(p.grid_rotation), "grid_rotation finite");
  require(std::isfinite(p.safety_margin) && p.safety_margin >= 0.0, "safety_margin >= 0");
  require(std::isfinite(p.ttc_floor) && p.ttc_floor > 0.0, "ttc_floor > 0");
}

double grid_jitter(int agent_id) {
  int m = agent_id % kJitterPeriod;
  if (m < 0) {
    m += kJitterPeriod;
  }
  return static_cast<double>(m) * kJitterStep;
}

Vec2 desired_velocity(const Vec2& goal_ego, double v_max) {
  const double dist = norm(goal_ego);
  if (dist < tol::kGoalEpsilon) {
    return {};
  }
  return goal_ego * (v_max / dist);
}

double control_cost(const Vec2& u, const Vec2& v_r, const Vec2& v_desired, double lambda) {
  return squared_norm(v_desired - (v_r + u)) + lambda * squared_norm(u);
}

std::vector<Vec2> candidate_controls(const Vec2& v_r, const Vec2& v_desired,
                                     const PlannerParams& params) {
  std::vector<Vec2> out;
  out.reserve(2 + static_cast<std::size_t>(params.n_radial) *
                      static_cast<std::size_t>(params.n_angular));
  out.push_back(clamp_control({}, v_r, params));
  out.push_back(clamp_control((v_desired - v_r) / (1.0 + params.lambda), v_r, params));
  for (int i = 1; i <= params.n_radial; ++i) {
    const double radius = params.u_max * static_cast<double>(i) / params.n_radial;
    for (int j = 0; j < params.n_angular; ++j) {
      const double angle =
          2.0 * std::numbers::pi * static_cast<double>(j) / params.n_angular + params.grid_rotation;
      const Vec2 u{radius * std::cos(angle), radius * std::sin(angle)};
      out.push_back(clamp_control(u, v_r, params));
    }
  }
  return out;
}

std::vector<ConeConstraint> build_constraints(std::span<const ObstacleTrack> tracks,
                                              double agent_radius, double safety_margin) {
  std::vector<ConeConstraint> out;
  out.reserve(tracks.size());
  for (const auto& track : tracks) {
    out.push_back({track.curr.position, estimate_relative_velocity(track),
                   agent_radius + track.radius + safety_margin});
  }
  return out;
}

CandidateScore score_candidate(const Vec2& u, const Vec2& v_r, const Vec2& v_desired,
                               std::span<const ConeConstraint> constraints,
                               const PlannerParams& params) {
  CandidateScore s;
  s.cost = control_cost(u, v_r, v_desired, params.lambda);
  for (const auto& c : constraints) {
    // Applying u changes the obstacle's velocity relative to the agent by -u.
    const double violation = cone_violation(c.position, c.relative_velocity - u,
                                            c.combined_radius, params.approaching_filter);
    s.total_violation += violation;
    if (violation > 0.0) {
      const double ttc = std::max(
          time_to_contact(c.position, c.relative_velocity - u, c.combined_radius), params.ttc_floor);
      s.urgency += violation / (ttc * ttc);
    }
    s.worst_violation = std::max(s.worst_violation, violation);
  }
  return s;
}

ControlDecision plan_control(const Vec2& v_r, const Vec2& goal_ego, double agent_radius,
                             std::span<const ObstacleTrack> tracks,
                             const PlannerParams& params) {
  const Vec2 v_desired = desired_velocity(goal_ego, params.v_max);
  const auto constraints = build_constraints(tracks, agent_radius, params.safety_margin);
  const auto candidates = candidate_controls(v_r, v_desired, params);
  const Vec2 reference = tie_break_reference(v_r, v_desired);

  bool have_feasible = false;
  Ranked best_feasible;
  Ranked best_overall;
  bool first = true;

  for (const Vec2& u : candidates) {
    Ranked r;
    r.u = u;
    r.score = score_candidate(u, v_r, v_desired, constraints, params);
    r.length = norm(u);
    r.angle = r.length > 0.0 ? signed_angle(reference, u) : 0.0;

    if (r.score.feasible()) {
      r.objective = r.score.cost;
      if (!have_feasible || better(r, best_feasible)) {
        best_feasible = r;
        have_feasible = true;
      }
    }
    if (!have_feasible) {
      Ranked penalised = r;
      const double term = params.fallback == InfeasibleFallback::kLeastViolation
                              ? r.score.total_violation
                              : r.score.urgency;
      penalised.objective = r.score.cost + params.infeasible_penalty * term;
      if (first || better(penalised, best_overall)) {
        best_overall = penalised;
      }
    }
    first = false;
  }

  const Ranked& chosen = have_feasible ? best_feasible : best_overall;
  return {chosen.u, have_feasible, chosen.score.cost, chosen.score.worst_violation};
}

}  // namespace ivo
