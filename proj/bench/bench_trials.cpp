#include <benchmark/benchmark.h>
#include <omp.h>

#include "qres/simulate.hpp"

namespace {

qres::TrialConfig config_for(const benchmark::State& state) {
  qres::TrialConfig cfg;
  cfg.alpha = 20;
  cfg.energy = 1.0 / 3.0;
  cfg.n = state.range(0);
  cfg.trials = 64;
  cfg.seed = 7;
  return cfg;
}

void BM_TrialsSerial(benchmark::State& state) {
  const auto cfg = config_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(qres::run_trials_serial(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}

void BM_TrialsOpenMP(benchmark::State& state) {
  const auto cfg = config_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(qres::run_trials(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.trials);
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsOpenMP)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
