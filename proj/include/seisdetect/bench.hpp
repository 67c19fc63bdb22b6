#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "seisdetect/eval.hpp"
#include "seisdetect/features.hpp"
#include "seisdetect/model.hpp"
#include "seisdetect/waveform.hpp"

namespace seisdetect {

struct SplitSpec {
  double train = 0.6;
  double validation = 0.2;
  double test = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Partition {
  std::vector<WaveformRecord> train;
  std::vector<WaveformRecord> validation;
  std::vector<WaveformRecord> test;
};

struct SplitCounts {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

// floor(n * train), floor(n * validation), remainder.
SplitCounts split_counts(std::size_t n, const SplitSpec& spec);

// Events go whole to one split after a seeded shuffle of the sorted event
// ids; noise traces are split the same way by trace_id. Output keeps input
// order within each split. TooFewEvents when any split would get no event.
Partition partition_by_event(const std::vector<WaveformRecord>& records, const SplitSpec& spec);

// Number of noise records for a ratio: ratio * n_positive rounded half away
// from zero.
std::size_t noise_count(std::size_t n_positive, double ratio);

// Pool indices drawn without replacement: the first noise_count entries of a
// seeded permutation, so for one seed a larger ratio yields a superset.
// InsufficientNoise reports the shortfall.
std::vector<std::size_t> sample_noise(std::size_t pool_size, std::size_t n_positive, double ratio,
                                      std::uint64_t seed);

struct RatioDataset {
  FeatureMatrix data;
  double requested_ratio = 0.0;
  double achieved_ratio = 0.0;
};

// All positives plus sampled noise rows; rows keep positives first.
RatioDataset build_ratio_dataset(const FeatureMatrix& positives, const FeatureMatrix& noise_pool, double ratio,
                                 std::uint64_t seed);

struct RatioSpec {
  std::vector<double> ratios{1.73, 5.0, 10.0, 25.0, 50.0};
  std::uint64_t seed = 0;

  void validate() const;
};

struct NamedModel {
  std::string name;
  LinearModel model;
};

struct PredictionSource {
  std::string name;
  std::map<std::string, Label> predictions;
};

struct SweepRow {
  std::string source;
  double ratio = 0.0;
  double achieved_ratio = 0.0;
  EvalReport report;
};

struct SweepResult {
  std::vector<double> ratios;
  std::vector<std::string> sources;
  // Ordered by ratio, then by source (models before prediction files).
  std::vector<SweepRow> rows;

  double mcc(const std::string& source, double ratio) const;
};

// Models are applied as trained; nothing is refit per ratio. Every source is
// scored on the same sampled rows for a given ratio.
SweepResult sweep(const std::vector<NamedModel>& models, const std::vector<PredictionSource>& external,
                  const FeatureMatrix& positives, const FeatureMatrix& noise_pool, const RatioSpec& spec);

void write_sweep_text(std::ostream& out, const SweepResult& result);
// Long form: source,ratio,achieved_ratio,tp,tn,fp,fn,mcc,accuracy.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
// Wide grid: source followed by one MCC column per ratio.
void write_sweep_grid(std::ostream& out, const SweepResult& result);
void write_sweep_json(std::ostream& out, const SweepResult& result);

struct SyntheticSpec {
  int n_events = 47;
  int traces_per_event_min = 40;
  int traces_per_event_max = 58;
  int n_noise = 4000;
  double fs = 200.0;
  std::size_t window_len = 6000;
  double snr_min = 1.0;
  double snr_max = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Event traces: decaying 5-25 Hz wavelets with random onset and decay, in
// colored noise at an SNR (peak wavelet amplitude over noise RMS) drawn from
// the range. Noise traces: colored noise alone. Event magnitudes follow
// 0.2 + Exp(mean 0.85). Reproducible from spec.seed.
std::vector<WaveformRecord> generate_synthetic(const SyntheticSpec& spec);

// Feature-space corpus with known informative columns, used to exercise the
// selection workflow and the ratio sweep without waveform extraction.
struct PlantedSpec {
  int n_informative = 2;
  int n_noise_features = 22;
  std::size_t n_train = 400;
  std::size_t n_validation = 200;
  // Noise-to-event ratio of the train and validation sets.
  double base_ratio = 1.73;
  // Held-out positives and noise pool for the ratio sweep.
  std::size_t n_test_positive = 300;
  std::size_t n_pool = 16000;
  double effect = 2.0;
  std::uint64_t seed = 0;
};

struct PlantedCorpus {
  FeatureMatrix train;
  FeatureMatrix validation;
  FeatureMatrix test_positive;
  FeatureMatrix noise_pool;
  std::vector<std::string> informative;
};

// Each class is drawn from a Gaussian; informative columns shift event rows
// by +/- effect standard deviations, all other columns are pure noise. Column
// positions of the informative codes are seeded.
PlantedCorpus generate_planted(const PlantedSpec& spec);

// CSV with a header containing trace_id and either `label` (event/noise or
// 1/0) or `probability`, plus an optional per-row `threshold` column (default
// 0.5; probability >= threshold is an event). IngestError lists missing and
// duplicate ids; rows for unexpected ids are ignored.
std::map<std::string, Label> ingest_predictions(std::istream& in, const std::vector<std::string>& expected_ids);
std::map<std::string, Label> ingest_predictions(const std::filesystem::path& path,
                                                const std::vector<std::string>& expected_ids);

}  // namespace seisdetect
