#pragma once

namespace ivo::tol {

// Below this relative speed (m/s) the cone is undefined and the static overlap rule applies.
inline constexpr double kDegenerateSpeed = 1e-9;

// Smallest observation spacing (s) the relative-velocity estimator accepts.
inline constexpr double kMinObservationInterval = 1e-6;

// Goal distance (m) under which the desired velocity is zero.
inline constexpr double kGoalEpsilon = 1e-9;

// Slack allowed on speed and control bounds after clamping.
inline constexpr double kBoundSlack = 1e-9;

// Cone values within this band of zero are tangent cases and not compared against the oracle.
inline constexpr double kConeBoundaryBand = 1e-6;

}  // namespace ivo::tol
