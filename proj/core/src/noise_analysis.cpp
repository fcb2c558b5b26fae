#include "ivo/noise_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ivo/collision_cone.hpp"
#include "ivo/errors.hpp"

namespace ivo {
namespace {

constexpr std::size_t kMinIntervalSamples = 10;
constexpr std::size_t kMinMonteCarloSamples = 100;
constexpr std::size_t kFallbackBins = 50;
constexpr double kMaxBins = 1e4;
constexpr double kMaxDiscardFraction = 0.01;

Vec2 perturb(const Vec2& v, double sigma, std::mt19937_64& rng) {
  if (sigma <= 0.0) {
    return v;
  }
  std::normal_distribution<double> dist(0.0, sigma);
  const double dx = dist(rng);
  const double dy = dist(rng);
  return {v.x + dx, v.y + dy};
}

double ivo_value(const Vec2& prev, const Vec2& curr, double delta, double radius) {
  const ObstacleTrack track{{}, {prev, 0.0}, {curr, delta}, radius};
  return cone_value(curr, estimate_relative_velocity(track), radius);
}

}  // namespace

void validate(const NoiseModel& n) {
  for (double s : {n.sigma_agent_pos, n.sigma_agent_vel, n.sigma_obs_pos, n.sigma_obs_vel,
                   n.sigma_ego_obs}) {
    if (!(std::isfinite(s) && s >= 0.0)) {
      throw ConfigError("noise: every sigma >= 0");
    }
  }
}

double classic_vo_value(const Vec2& agent_pos, const Vec2& agent_vel, const Vec2& obs_pos,
                        const Vec2& obs_vel, double combined_radius) {
  return cone_value(obs_pos - agent_pos, obs_vel - agent_vel, combined_radius);
}

double quantile(std::span<const double> sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

ConfidenceInterval confidence_interval(std::span<const double> samples, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
  if (samples.size() < kMinIntervalSamples) {
    throw InsufficientSamples("confidence interval needs at least 10 samples, got " +
                              std::to_string(samples.size()));
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double tail = (1.0 - level) / 2.0;
  return {level, quantile(sorted, tail), quantile(sorted, 1.0 - tail)};
}

Histogram make_histogram(std::span<const double> sorted) {
  Histogram h;
  if (sorted.empty()) {
    return h;
  }
  const double lo = sorted.front();
  const double hi = sorted.back();
  if (hi == lo) {
    h.edges = {lo, hi};
    h.counts = {sorted.size()};
    return h;
  }

  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double n = static_cast<double>(sorted.size());
  std::size_t bins = kFallbackBins;
  if (iqr > 0.0) {
    const double width = 2.0 * iqr / std::cbrt(n);
    const double fd = std::ceil((hi - lo) / width);
    if (fd >= 1.0 && fd <= kMaxBins) {
      bins = static_cast<std::size_t>(fd);
    }
  }

  const double width = (hi - lo) / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    h.edges[b] = lo + width * static_cast<double>(b);
  }
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (double x : sorted) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    h.counts[std::min(b, bins - 1)] += 1;
  }
  return h;
}

DistributionSummary summarize(std::span<const double> samples, double level) {
  DistributionSummary s;
  s.count = samples.size();
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  const double n = static_cast<double>(s.count);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : sorted) {
    ss += (x - s.mean) * (x - s.mean);
  }
  s.variance = s.count > 1 ? ss / (n - 1.0) : 0.0;

  s.histogram = make_histogram(sorted);
  s.cdf.push_back({s.histogram.edges.front(), 0.0});
  std::size_t cumulative = 0;
  for (std::size_t b = 0; b < s.histogram.counts.size(); ++b) {
    cumulative += s.histogram.counts[b];
    s.cdf.push_back({s.histogram.edges[b + 1], static_cast<double>(cumulative) / n});
  }
  s.interval = confidence_interval(sorted, level);
  return s;
}

double NoiseComparison::width_ratio() const {
  const double vo_width = vo.interval.width();
  if (vo_width == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return ivo.interval.width() / vo_width;
}

NoiseComparison monte_carlo_cone_error(const ConePoint& truth, const NoiseModel& noise,
                                       std::size_t n_samples, std::mt19937_64& rng,
                                       double level) {
  if (n_samples < kMinMonteCarloSamples) {
    throw InsufficientSamples("Monte-Carlo comparison needs at least 100 samples");
  }
  validate(noise);
  if (!(truth.delta >= tol::kMinObservationInterval)) {
    throw ConfigError("observation interval delta below minimum");
  }

  const Vec2 prev_truth =
      (truth.obs_pos - truth.obs_vel * truth.delta) - (truth.agent_pos - truth.agent_vel * truth.delta);
  const Vec2 curr_truth = truth.obs_pos - truth.agent_pos;

  const double vo_nominal = classic_vo_value(truth.agent_pos, truth.agent_vel, truth.obs_pos,
                                             truth.obs_vel, truth.radius);
  const double ivo_nominal = ivo_value(prev_truth, curr_truth, truth.delta, truth.radius);

  NoiseComparison out;
  out.vo_errors.reserve(n_samples);
  out.ivo_errors.reserve(n_samples);
  std::size_t vo_discarded = 0;
  std::size_t ivo_discarded = 0;

  for (std::size_t i = 0; i < n_samples; ++i) {
    const Vec2 ap = perturb(truth.agent_pos, noise.sigma_agent_pos, rng);
    const Vec2 av = perturb(truth.agent_vel, noise.sigma_agent_vel, rng);
    const Vec2 op = perturb(truth.obs_pos, noise.sigma_obs_pos, rng);
    const Vec2 ov = perturb(truth.obs_vel, noise.sigma_obs_vel, rng);
    try {
      out.vo_errors.push_back(classic_vo_value(ap, av, op, ov, truth.radius) - vo_nominal);
    } catch (const DegenerateVelocity&) {
      ++vo_discarded;
    }

    const Vec2 prev = perturb(prev_truth, noise.sigma_ego_obs, rng);
    const Vec2 curr = perturb(curr_truth, noise.sigma_ego_obs, rng);
    try {
      out.ivo_errors.push_back(ivo_value(prev, curr, truth.delta, truth.radius) - ivo_nominal);
    } catch (const DegenerateVelocity&) {
      ++ivo_discarded;
    }
  }

  const auto limit = static_cast<std::size_t>(kMaxDiscardFraction * static_cast<double>(n_samples));
  if (vo_discarded > limit || ivo_discarded > limit) {
    throw ExcessiveDiscards("more than 1% of draws had a degenerate relative velocity (vo " +
                            std::to_string(vo_discarded) + ", ivo " +
                            std::to_string(ivo_discarded) + ")");
  }

  out.vo = summarize(out.vo_errors, level);
  out.vo.discarded = vo_discarded;
  out.ivo = summarize(out.ivo_errors, level);
  out.ivo.discarded = ivo_discarded;
  return out;
}

NoiseComparison run_study(const NoiseStudy& study) {
  std::mt19937_64 rng(study.seed);
  return monte_carlo_cone_error(study.truth, study.noise, study.samples, rng, study.level);
}

}  // namespace ivo
