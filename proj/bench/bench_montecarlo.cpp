#include <benchmark/benchmark.h>

#include "liqsched/montecarlo.hpp"
#include "liqsched/sweep.hpp"

using namespace liqsched;

namespace {

McConfig base_config(std::int64_t reps) {
  McConfig cfg;
  cfg.n_reps = static_cast<std::size_t>(reps);
  cfg.seed = 1;
  return cfg;
}

void BM_ExperimentSerial(benchmark::State& state) {
  const auto params = reference_portfolio();
  const auto cfg = base_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(params, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExperimentParallel(benchmark::State& state) {
  const auto params = reference_portfolio();
  const auto cfg = base_config(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(params, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = preset("fig6", 1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(spec));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = preset("fig6", 1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}

}  // namespace

BENCHMARK(BM_ExperimentSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
