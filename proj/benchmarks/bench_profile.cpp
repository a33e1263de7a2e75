#include <benchmark/benchmark.h>

#include "yamabe/curvature.hpp"
#include "yamabe/profile.hpp"

using namespace yamabe;

static void BM_shoot_radial(benchmark::State& state) {
  SolitonParams P = derive_params(3, SolitonClass::Steady, 1.0);
  for (auto _ : state) {
    RadialProfile prof = integrate_euclidean(P, 1.0, 50.0, 1e-10);
    benchmark::DoNotOptimize(prof.u.back());
  }
}
BENCHMARK(BM_shoot_radial);

static void BM_cylindrical(benchmark::State& state) {
  SolitonParams P = derive_params(3, SolitonClass::Steady, 1.0);
  for (auto _ : state) {
    CylindricalProfile cyl = integrate_cylindrical(P, 1.0, -11.0, 12.0, 1e-10);
    benchmark::DoNotOptimize(cyl.w.back());
  }
}
BENCHMARK(BM_cylindrical);

static void BM_curvature_report(benchmark::State& state) {
  SolitonParams P = derive_params(3, SolitonClass::Steady, 1.0);
  CylindricalProfile cyl = integrate_cylindrical(P, 1.0, -11.0, 12.0, 1e-10);
  for (auto _ : state) {
    CurvatureReport rep = curvature_report(cyl);
    benchmark::DoNotOptimize(rep.R.back());
  }
}
BENCHMARK(BM_curvature_report);

BENCHMARK_MAIN();
