#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ivo/collision_cone.hpp"
#include "ivo/planner.hpp"
#include "ivo/presets.hpp"
#include "ivo/simulator.hpp"

namespace {

// Obstacles scattered around the agent, each seen on two cycles 0.1 s apart.
std::vector<ivo::ObstacleTrack> random_tracks(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-8.0, 8.0);
  std::uniform_real_distribution<double> vel(-1.0, 1.0);
  std::vector<ivo::ObstacleTrack> tracks;
  for (int i = 0; i < n; ++i) {
    const ivo::Vec2 p{pos(rng), pos(rng)};
    const ivo::Vec2 v{vel(rng), vel(rng)};
    tracks.push_back({{ivo::EntityKind::kAgent, i}, {p, 0.0}, {p + v * 0.1, 0.1}, 0.5});
  }
  return tracks;
}

void BM_PlanControl(benchmark::State& state) {
  const auto tracks = random_tracks(static_cast<int>(state.range(0)), 7);
  const ivo::PlannerParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivo::plan_control({0.6, 0.1}, {10.0, 2.0}, 0.5, tracks, params));
  }
}
BENCHMARK(BM_PlanControl)->Arg(0)->Arg(1)->Arg(5)->Arg(10)->Arg(20)->Arg(49);

void BM_CandidateControls(benchmark::State& state) {
  const ivo::PlannerParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivo::candidate_controls({0.6, 0.1}, {0.9, 0.3}, params));
  }
}
BENCHMARK(BM_CandidateControls);

void BM_ConeCoefficients(benchmark::State& state) {
  const ivo::Vec2 r{3.0, -1.0}, v_o{0.5, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivo::cone_coefficients(r, v_o, 1.5));
  }
}
BENCHMARK(BM_ConeCoefficients);

// One synchronous cycle of the antipodal circle, taken from a state a few seconds in so
// that neighbours are inside sensor range and carry two-cycle tracks.
void BM_SimulatorStep(benchmark::State& state) {
  const auto scenario = ivo::presets::bench_circle(static_cast<int>(state.range(0)));
  auto rngs = ivo::make_agent_rngs(scenario);
  auto world = ivo::initial_world(scenario);
  for (int i = 0; i < 60; ++i) {
    world = ivo::step(world, scenario, rngs).world;
  }
  for (auto _ : state) {
    auto copy = rngs;
    benchmark::DoNotOptimize(ivo::step(world, scenario, copy));
  }
  state.counters["agents"] = static_cast<double>(state.range(0));
}
BENCHMARK(BM_SimulatorStep)->Arg(2)->Arg(6)->Arg(10)->Arg(20)->Arg(50)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
