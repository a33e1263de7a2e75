#include <benchmark/benchmark.h>

#include <cmath>

#include "yamabe/flow.hpp"
#include "yamabe/profile.hpp"

using namespace yamabe;

static void BM_flow_short(benchmark::State& state) {
  auto grid = uniform_grid(50.0, 500);
  RadialProfile initial = sample_barenblatt(3, std::sqrt(2.0), grid);
  FlowConfig cfg;
  cfg.grid_points = 500;
  cfg.snapshots = 2;
  for (auto _ : state) {
    FlowTrajectory traj = evolve_fde(initial, 0.0, 0.05, cfg);
    benchmark::DoNotOptimize(traj.states.back().u_bar[0]);
  }
}
BENCHMARK(BM_flow_short);

static void BM_flow_monitor(benchmark::State& state) {
  auto grid = uniform_grid(50.0, 500);
  RadialProfile initial = sample_barenblatt(3, std::sqrt(2.0), grid);
  FlowConfig cfg;
  cfg.grid_points = 500;
  cfg.snapshots = 3;
  FlowTrajectory traj = evolve_fde(initial, 0.0, 0.1, cfg);
  for (auto _ : state) {
    auto zs = harnack_monitor(traj);
    benchmark::DoNotOptimize(zs.back().t);
  }
}
BENCHMARK(BM_flow_monitor);
