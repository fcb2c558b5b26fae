#pragma once

namespace ivo {

/// Per-axis, zero-mean Gaussian standard deviations.
struct NoiseModel {
  double sigma_agent_pos = 0.0;  // m
  double sigma_agent_vel = 0.0;  // m/s
  double sigma_obs_pos = 0.0;    // m
  double sigma_obs_vel = 0.0;    // m/s
  double sigma_ego_obs = 0.0;    // m, on each ego-frame observation

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// Throws ConfigError if any deviation is negative or not finite.
void validate(const NoiseModel& noise);

}  // namespace ivo
