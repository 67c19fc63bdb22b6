// Serial reference vs OpenMP kernel for each parallel stage. Thread count
// follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "seisdetect/bench.hpp"
#include "seisdetect/features.hpp"
#include "seisdetect/selection.hpp"

using namespace seisdetect;

namespace {

const std::vector<WaveformRecord>& raw_corpus() {
  static const auto recs = [] {
    SyntheticSpec spec;
    spec.n_events = 8;
    spec.traces_per_event_min = 4;
    spec.traces_per_event_max = 6;
    spec.n_noise = 40;
    spec.window_len = 2000;
    spec.seed = 1;
    return generate_synthetic(spec);
  }();
  return recs;
}

const std::vector<WaveformRecord>& preprocessed_corpus() {
  static const auto recs = preprocess_all_serial(raw_corpus(), PreprocessConfig{});
  return recs;
}

const PlantedCorpus& planted() {
  static const auto c = [] {
    PlantedSpec spec;
    spec.n_pool = 10;
    spec.n_test_positive = 10;
    spec.seed = 3;
    return generate_planted(spec);
  }();
  return c;
}

void BM_PreprocessSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(preprocess_all_serial(raw_corpus(), PreprocessConfig{}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(raw_corpus().size()));
}

void BM_PreprocessParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(preprocess_all(raw_corpus(), PreprocessConfig{}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(raw_corpus().size()));
}

void BM_ExtractSerial(benchmark::State& state) {
  const auto codes = reproduction_registry().list();
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_matrix_serial(preprocessed_corpus(), reproduction_registry(), codes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(preprocessed_corpus().size()));
}

void BM_ExtractParallel(benchmark::State& state) {
  const auto codes = reproduction_registry().list();
  for (auto _ : state) benchmark::DoNotOptimize(extract_matrix(preprocessed_corpus(), reproduction_registry(), codes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(preprocessed_corpus().size()));
}

EnsembleConfig ensemble_config() {
  EnsembleConfig cfg;
  cfg.n_runs = 40;
  cfg.seed = 5;
  return cfg;
}

void BM_EnsembleSerial(benchmark::State& state) {
  const auto cfg = ensemble_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble_serial(planted().train, planted().validation, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.n_runs);
}

void BM_EnsembleParallel(benchmark::State& state) {
  const auto cfg = ensemble_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(planted().train, planted().validation, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.n_runs);
}

}  // namespace

BENCHMARK(BM_PreprocessSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreprocessParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExtractSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnsembleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
