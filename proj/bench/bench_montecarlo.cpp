// Serial reference vs OpenMP kernel for the correlation experiment.

#include <benchmark/benchmark.h>

#include "nnv/montecarlo.hpp"

namespace {

nnv::SimConfig config_for(const benchmark::State& state) {
  nnv::SimConfig config;
  config.m = static_cast<std::size_t>(state.range(0));
  config.trials = 20000;
  config.seed = 42;
  config.allow_non_admissible = true;
  return config;
}

void BM_Reference(benchmark::State& state) {
  const auto config = config_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(nnv::correlation_experiment_reference(config));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(config.trials));
}

void BM_Kernel(benchmark::State& state) {
  auto config = config_for(state);
  config.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(nnv::correlation_experiment(config));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(config.trials));
}

BENCHMARK(BM_Reference)->Arg(3)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Kernel)->ArgsProduct({{3, 20}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
