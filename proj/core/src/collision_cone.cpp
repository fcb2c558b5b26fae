#include "ivo/collision_cone.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ivo/errors.hpp"

namespace ivo {

double ConeCoefficients::evaluate(const Vec2& v) const {
  return c1 * v.x * v.x + c2 * v.y * v.y + c3 * v.x * v.y + c4 * v.x + c5 * v.y + c6;
}

Vec2 estimate_relative_velocity(const ObstacleTrack& track, double min_interval) {
  const double delta = track.curr.timestamp - track.prev.timestamp;
  if (!(delta >= min_interval)) {
    throw DegenerateInterval("observation interval " + std::to_string(delta) +
                             " s is below the minimum " + std::to_string(min_interval) + " s");
  }
  return (track.curr.position - track.prev.position) / delta;
}

double cone_value(const Vec2& r, const Vec2& v, double combined_radius) {
  const double v2 = squared_norm(v);
  if (!(std::sqrt(v2) >= tol::kDegenerateSpeed)) {
    throw DegenerateVelocity("relative speed below " + std::to_string(tol::kDegenerateSpeed));
  }
  const double rv = dot(r, v);
  return rv * rv / v2 - squared_norm(r) + combined_radius * combined_radius;
}

bool on_collision_course(const Vec2& r, const Vec2& v, double combined_radius) {
  if (norm(r) <= combined_radius) {
    return true;
  }
  if (norm(v) < tol::kDegenerateSpeed) {
    return false;
  }
  return dot(r, v) < 0.0 && cone_value(r, v, combined_radius) >= 0.0;
}

double cone_violation(const Vec2& r, const Vec2& v, double combined_radius,
                      bool approaching_filter) {
  if (norm(v) < tol::kDegenerateSpeed) {
    const double overlap = combined_radius * combined_radius - squared_norm(r);
    return overlap > 0.0 ? overlap : 0.0;
  }
  if (approaching_filter && dot(r, v) >= 0.0) {
    return 0.0;
  }
  const double f = cone_value(r, v, combined_radius);
  return f > 0.0 ? f : 0.0;
}

double time_to_contact(const Vec2& r, const Vec2& v, double combined_radius) {
  if (norm(r) <= combined_radius) {
    return 0.0;
  }
  const double v2 = squared_norm(v);
  const double rv = dot(r, v);
  if (std::sqrt(v2) < tol::kDegenerateSpeed || rv >= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  // |r + v t|^2 = R^2  =>  v2 t^2 + 2 rv t + (|r|^2 - R^2) = 0
  const double disc = rv * rv - v2 * (squared_norm(r) - combined_radius * combined_radius);
  if (disc < 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return (-rv - std::sqrt(disc)) / v2;
}

ConeCoefficients cone_coefficients(const Vec2& r, const Vec2& v_obstacle,
                                   double combined_radius) {
  // F(w) = (r.w)^2 - k |w|^2 with w = v_obstacle - v_agent and k = |r|^2 - R^2.
  const double k = squared_norm(r) - combined_radius * combined_radius;
  const double a = dot(r, v_obstacle);
  ConeCoefficients c;
  c.c1 = r.x * r.x - k;
  c.c2 = r.y * r.y - k;
  c.c3 = 2.0 * r.x * r.y;
  c.c4 = -2.0 * a * r.x + 2.0 * k * v_obstacle.x;
  c.c5 = -2.0 * a * r.y + 2.0 * k * v_obstacle.y;
  c.c6 = a * a - k * squared_norm(v_obstacle);
  return c;
}

ClosestApproach min_separation(const Vec2& r, const Vec2& v, double horizon, double dt) {
  ClosestApproach best{0.0, norm(r)};
  const auto steps = static_cast<long long>(std::floor(horizon / dt));
  for (long long i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double d = norm(r + v * t);
    if (d < best.d_star) {
      best = {t, d};
    }
  }
  return best;
}

}  // namespace ivo
