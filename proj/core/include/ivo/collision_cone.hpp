#pragma once

#include <compare>
#include <cstdint>

#include "ivo/geometry.hpp"
#include "ivo/tolerances.hpp"

namespace ivo {

enum class EntityKind : std::uint8_t { kAgent, kPassive };

/// Identifies an obstacle as seen by an observing agent: either another agent or a
/// passive (scripted) obstacle.
struct EntityId {
  EntityKind kind = EntityKind::kAgent;
  int index = 0;

  friend constexpr auto operator<=>(const EntityId&, const EntityId&) = default;
};

/// Position of an obstacle in the observer's translation-only ego frame.
struct EgoObservation {
  Vec2 position;
  double timestamp = 0.0;
};

/// The two most recent observations of one obstacle.
struct ObstacleTrack {
  EntityId id;
  EgoObservation prev;
  EgoObservation curr;
  double radius = 0.0;
};

/// Coefficients of the cone rewritten as a quadratic in the agent velocity (vx, vy):
///   F = c1 vx^2 + c2 vy^2 + c3 vx vy + c4 vx + c5 vy + c6.
/// F is the cone value multiplied by the squared relative speed, so it is a true
/// polynomial and shares the sign of the cone value whenever the relative speed is
/// nonzero.
struct ConeCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c5 = 0.0;
  double c6 = 0.0;

  [[nodiscard]] double evaluate(const Vec2& agent_velocity) const;
};

struct ClosestApproach {
  double t_star = 0.0;
  double d_star = 0.0;
};

/// Finite-difference velocity of the obstacle relative to the observer, from two ego
/// observations. Uses nothing about the observer's own global state.
/// Throws DegenerateInterval if the observations are closer than `min_interval` in time.
Vec2 estimate_relative_velocity(const ObstacleTrack& track,
                                double min_interval = tol::kMinObservationInterval);

/// Cone value for relative position `r` and relative velocity `v` of a point obstacle
/// against a disc of radius `combined_radius` at the origin:
///   f = (r.v)^2 / |v|^2 - |r|^2 + R^2.
/// f >= 0 means the line through r along v passes within R of the origin.
/// Throws DegenerateVelocity if |v| is below tol::kDegenerateSpeed.
double cone_value(const Vec2& r, const Vec2& v, double combined_radius);

/// True if the obstacle will reach the combined disc at some future time: already
/// overlapping, or inside the cone while approaching (r.v < 0). A degenerate relative
/// velocity falls back to the static overlap test.
bool on_collision_course(const Vec2& r, const Vec2& v, double combined_radius);

/// Amount by which the cone constraint f <= 0 is violated, or zero when satisfied.
/// With `approaching_filter` set, receding obstacles impose no constraint. A degenerate
/// relative velocity violates the constraint by R^2 - |r|^2 when overlapping.
double cone_violation(const Vec2& r, const Vec2& v, double combined_radius,
                      bool approaching_filter);

/// Time until the point obstacle first reaches the combined disc, or +inf if it never
/// does. Zero when already overlapping.
double time_to_contact(const Vec2& r, const Vec2& v, double combined_radius);

ConeCoefficients cone_coefficients(const Vec2& r, const Vec2& v_obstacle, double combined_radius);

/// Brute-force closest approach of p(t) = r + v t sampled every `dt` on [0, horizon].
ClosestApproach min_separation(const Vec2& r, const Vec2& v, double horizon, double dt);

}  // namespace ivo
