// Copyright 2026 The iosim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Serial reference kernels against their OpenMP versions, and the two
// branch-and-bound node bounds.

#include <benchmark/benchmark.h>

#include "iosim/experiments.hpp"

using namespace iosim;

namespace {

ScenarioConfig sweep_scenario() { return ScenarioConfig{}; }

ScenarioConfig map_scenario() {
  ScenarioConfig s;
  s.experiment.grid = {-2.0, 2.0, -1.0, 1.0, 0.2};
  return s;
}

const std::vector<std::size_t> kSizes{2, 6, 10};

void BM_SweepSerial(benchmark::State& state) {
  const ScenarioConfig s = sweep_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(size_sweep_serial(s, kSizes, static_cast<std::size_t>(state.range(0)), 1));
  }
}

void BM_SweepOmp(benchmark::State& state) {
  const ScenarioConfig s = sweep_scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(size_sweep(s, kSizes, static_cast<std::size_t>(state.range(0)), 1));
  }
}

void BM_HeatmapSerial(benchmark::State& state) {
  const ScenarioConfig s = map_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(heatmap_serial(s));
}

void BM_HeatmapOmp(benchmark::State& state) {
  const ScenarioConfig s = map_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(heatmap(s));
}

void BM_BnbBound(benchmark::State& state) {
  PanelGeometry panel;
  panel.rows = panel.cols = static_cast<std::size_t>(state.range(0));
  const LinkBudget link = build_link(panel, {-500, 0, 2}, {0.9, -0.6, 2}, RfConstants{});
  BnbOptions o;
  o.bound = state.range(1) == 0 ? BoundKind::relaxed : BoundKind::rotation;
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const OptimizationResult r = branch_and_bound(link, o);
    nodes = r.nodes_visited;
    benchmark::DoNotOptimize(r);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOmp)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HeatmapSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HeatmapOmp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BnbBound)
    ->ArgsProduct({{3, 4, 5, 6, 7}, {0, 1}})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BnbBound)->Args({10, 1})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
