#include <benchmark/benchmark.h>

#include "jury/presets.hpp"
#include "jury/simulation.hpp"

namespace {

jury::SimulationRequest request(std::size_t n) {
  return {.model = jury::beta_pair_model(0.25, jury::Polarization::moderate),
          .j = 12, .d = 6, .p = 6,
          .procedures = {jury::Procedure::struck, jury::Procedure::strike_replace, jury::Procedure::random},
          .n_sims = n, .seed = 0x5EED0001, .thresholds = {0.1, 0.2, 0.3}};
}

void BM_serial(benchmark::State& state) {
  const auto req = request(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jury::simulate_serial(req));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_parallel(benchmark::State& state) {
  const auto req = request(static_cast<std::size_t>(state.range(0)));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(jury::simulate_parallel(req, workers));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_solve(benchmark::State& state) {
  const auto dist = jury::beta_pair_model(0.25, jury::Polarization::moderate).pooled();
  for (auto _ : state) benchmark::DoNotOptimize(jury::solve(dist, 12, 6, 6));
}

}  // namespace

BENCHMARK(BM_serial)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)->Args({50000, 1})->Args({50000, 2})->Args({50000, 4})->Args({50000, 8})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_solve)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
