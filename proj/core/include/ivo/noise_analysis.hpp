#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ivo/geometry.hpp"
#include "ivo/noise_model.hpp"

namespace ivo {

/// Classic velocity-obstacle cone value computed from global agent and obstacle states.
/// Throws DegenerateVelocity when the relative velocity vanishes.
double classic_vo_value(const Vec2& agent_pos, const Vec2& agent_vel, const Vec2& obs_pos,
                        const Vec2& obs_vel, double combined_radius);

struct ConfidenceInterval {
  double level = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double width() const { return hi - lo; }
};

/// Linear interpolation between order statistics; `sorted` must be ascending.
double quantile(std::span<const double> sorted, double p);

/// Central empirical interval between the (1-level)/2 and (1+level)/2 quantiles.
/// Throws InsufficientSamples for fewer than 10 samples, std::invalid_argument for a
/// level outside (0, 1).
ConfidenceInterval confidence_interval(std::span<const double> samples, double level);

struct Histogram {
  std::vector<double> edges;  // counts.size() + 1 ascending edges
  std::vector<std::size_t> counts;
};

/// Freedman-Diaconis bin width, with 50 equal bins when the rule degenerates (zero IQR
/// or more than 10^4 bins). All samples equal yields one zero-width bin.
Histogram make_histogram(std::span<const double> sorted);

struct CdfPoint {
  double x = 0.0;
  double p = 0.0;
};

struct DistributionSummary {
  std::size_t count = 0;
  std::size_t discarded = 0;
  double mean = 0.0;
  double variance = 0.0;
  Histogram histogram;
  std::vector<CdfPoint> cdf;  // at the lowest edge (0) and every bin's upper edge
  ConfidenceInterval interval;
};

DistributionSummary summarize(std::span<const double> samples, double level);

/// Ground-truth state of one agent-obstacle pair, at the current instant. The observation
/// pair used by the ego-frame path is taken at (t - delta, t).
struct ConePoint {
  Vec2 agent_pos;
  Vec2 agent_vel;
  Vec2 obs_pos;
  Vec2 obs_vel;
  double radius = 1.0;
  double delta = 0.1;

  friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

struct NoiseComparison {
  DistributionSummary vo;
  DistributionSummary ivo;
  std::vector<double> vo_errors;
  std::vector<double> ivo_errors;

  /// IVO interval width over VO interval width; +inf when the VO width is zero.
  [[nodiscard]] double width_ratio() const;
};

/// A complete noise-comparison study: operating point, noise, and sampling settings.
struct NoiseStudy {
  std::string name;
  ConePoint truth;
  NoiseModel noise;
  std::size_t samples = 100000;
  double level = 0.99;
  std::uint64_t seed = 1;

  friend bool operator==(const NoiseStudy&, const NoiseStudy&) = default;
};

/// Monte-Carlo comparison of cone-value errors (perturbed minus noiseless).
///
/// The VO path perturbs agent and obstacle global states; the IVO path perturbs the two
/// ego observations and re-estimates the relative velocity. Draws with a degenerate
/// relative velocity are discarded; more than 1% discards on either path throws
/// ExcessiveDiscards. Requires n_samples >= 100.
NoiseComparison monte_carlo_cone_error(const ConePoint& truth, const NoiseModel& noise,
                                       std::size_t n_samples, std::mt19937_64& rng,
                                       double level = 0.99);

/// Runs `study` with its own seed.
NoiseComparison run_study(const NoiseStudy& study);

}  // namespace ivo
