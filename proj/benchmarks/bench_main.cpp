#include <benchmark/benchmark.h>

#include <complex>

#include "whitpack/observables.hpp"
#include "whitpack/packet.hpp"
#include "whitpack/radiative.hpp"
#include "whitpack/specfun.hpp"

namespace {

void BM_ModeValue(benchmark::State& state) {
  const double kappa = state.range(0) / 1000.0;
  const double x = static_cast<double>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(whitpack::whittaker_mode(kappa, x));
  }
}
BENCHMARK(BM_ModeValue)
    ->Args({136, 1})
    ->Args({136, 50})
    ->Args({136, 350})
    ->Args({1917, 50})
    ->Args({5000, 350});

void BM_ModeWithDerivative(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(whitpack::whittaker_mode_full(0.1356, 50.0));
  }
}
BENCHMARK(BM_ModeWithDerivative);

void BM_PacketBuild(benchmark::State& state) {
  const auto params = whitpack::map_energy_params(1.0, 0.1);
  const auto grid = whitpack::RadialGrid::resolve(params, 50.0);
  for (auto _ : state) {
    whitpack::PacketField field(params, grid);
    benchmark::DoNotOptimize(field.at_time(0.0));
  }
}
BENCHMARK(BM_PacketBuild)->Unit(benchmark::kMillisecond);

void BM_OverlapSeries(benchmark::State& state) {
  const auto params = whitpack::map_energy_params(1.0, 0.1);
  const auto mesh = whitpack::overlap_time_mesh(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(whitpack::overlap_series(params, mesh));
  }
}
BENCHMARK(BM_OverlapSeries)->Unit(benchmark::kMillisecond);

void BM_RadialMatrixElement(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(whitpack::radial_matrix_element(2, 0.1356));
  }
}
BENCHMARK(BM_RadialMatrixElement)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
