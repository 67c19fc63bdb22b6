#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "seisdetect/features.hpp"
#include "seisdetect/model.hpp"

namespace seisdetect {

struct VariationAxes {
  bool seed = false;         // per-run initialization seed (recorded only)
  bool lambda_grid = true;   // cycle through EnsembleConfig::lambda_grid
  bool subsample = true;     // seeded per-run subsample of the training rows
};

struct EnsembleConfig {
  int n_runs = 200;
  VariationAxes vary;
  std::vector<double> lambda_grid{0.002, 0.004, 0.006, 0.008, 0.01, 0.015, 0.02, 0.03, 0.04, 0.05};
  // Used for every run when the lambda grid is not varied.
  double lambda = 0.01;
  double alpha = 0.9;
  double tie_tolerance = 0.0;
  // Fraction of training rows kept per run, drawn per class.
  double subsample_fraction = 0.8;
  std::uint64_t seed = 0;
  TrainOptions train;

  void validate() const;
};

struct RunConfig {
  double lambda = 0.0;
  std::uint64_t init_seed = 0;
  std::uint64_t subsample_seed = 0;
  std::size_t n_train = 0;
};

struct EnsembleRunResult {
  int run_id = 0;
  std::vector<std::string> codes;
  std::vector<double> weights;
  double bias = 0.0;
  double val_mcc = 0.0;
  bool converged = false;
  RunConfig config_used;
};

// Every run standardizes with parameters fitted on the full training matrix,
// trains on its own rows, and scores validation MCC at threshold 0.5.
// Results are ordered by run_id.
std::vector<EnsembleRunResult> run_ensemble_serial(const FeatureMatrix& train, const FeatureMatrix& validation,
                                                   const EnsembleConfig& cfg);
std::vector<EnsembleRunResult> run_ensemble(const FeatureMatrix& train, const FeatureMatrix& validation,
                                            const EnsembleConfig& cfg);

// Runs with val_mcc >= max - tolerance, in run_id order.
std::vector<EnsembleRunResult> best_models(const std::vector<EnsembleRunResult>& results, double tie_tolerance);

struct FeatureWeightStats {
  std::string code;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  double median_abs = 0.0;
  double mean_abs = 0.0;
  double fraction_nonzero = 0.0;
};

using WeightDistribution = std::vector<FeatureWeightStats>;

WeightDistribution weight_distributions(const std::vector<EnsembleRunResult>& tie_set);

struct SelectionRule {
  double min_fraction_nonzero = 0.9;
  double min_median_abs = 0.05;
};

// Base-set codes come first (in the given order), then the passing features
// in distribution order.
std::vector<std::string> select_features(const WeightDistribution& dist, const SelectionRule& rule,
                                         const std::vector<std::string>& base_set = {});

struct SelectionReport {
  EnsembleConfig config;
  SelectionRule rule;
  std::vector<std::string> base_set;
  std::vector<EnsembleRunResult> runs;
  std::vector<int> tie_set;
  WeightDistribution distribution;
  std::vector<std::string> selected;
};

void write_selection_report(std::ostream& out, const SelectionReport& report);
void write_selection_report(const std::filesystem::path& path, const SelectionReport& report);
// Reads back only the selected feature list.
std::vector<std::string> read_selected_features(const std::filesystem::path& path);
// Plot-ready table: one row per feature with the distribution statistics.
void write_distribution_table(std::ostream& out, const WeightDistribution& dist);

}  // namespace seisdetect
