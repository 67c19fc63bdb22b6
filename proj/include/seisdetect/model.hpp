#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seisdetect/features.hpp"

namespace seisdetect {

/// Elastic-net penalty lambda * (alpha * sum|w| + (1 - alpha) * sum w^2).
struct PenaltyConfig {
  double alpha = 0.9;
  double lambda = 0.0;
  bool penalize_bias = false;

  void validate() const;
};

struct TrainOptions {
  int max_iters = 10000;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

struct TrainingMeta {
  double alpha = 0.0;
  double lambda = 0.0;
  bool penalize_bias = false;
  std::uint64_t seed = 0;
  int iterations = 0;
  bool converged = false;
};

struct LinearModel {
  double bias = 0.0;
  std::vector<std::string> codes;
  std::vector<double> weights;
  double threshold = 0.5;
  TrainingMeta meta;
  // Training-set z-score parameters; inputs are standardized with them
  // before prediction when present.
  std::optional<StandardizationParams> standardization;

  std::optional<double> weight(std::string_view code) const;
  std::size_t nonzero_count() const;
};

double sigmoid(double eta);
double soft_threshold(double z, double gamma);

double penalty(std::span<const double> weights, const PenaltyConfig& cfg);
// Includes the bias term when cfg.penalize_bias is set.
double penalty(const LinearModel& model, const PenaltyConfig& cfg);

// Inputs are expected on the model's standardized scale; see prepare_inputs.
double predict_proba(const LinearModel& model, const FeatureVector& x);
std::vector<double> predict_proba(const LinearModel& model, const FeatureMatrix& data);

// Event iff probability >= threshold, so an exact tie is an event.
Label classify(const LinearModel& model, const FeatureVector& x, double threshold);
Label classify(const LinearModel& model, const FeatureVector& x);
std::vector<Label> classify(const LinearModel& model, const FeatureMatrix& data);

// Applies the model's stored standardization (if any) and reorders columns to
// the model's feature order. MissingFeature when a model feature is absent.
FeatureMatrix prepare_inputs(const LinearModel& model, const FeatureMatrix& raw);

// Mean negative log-likelihood (probabilities clamped to [1e-12, 1 - 1e-12])
// plus the penalty.
double loss(const LinearModel& model, const FeatureMatrix& data, const PenaltyConfig& cfg);

// Gradient of the mean negative log-likelihood: [d/dbias, d/dw_1, ...].
std::vector<double> nll_gradient(const LinearModel& model, const FeatureMatrix& data);

// Smallest lambda at which every weight is zero for the given alpha (> 0).
double lambda_max(const FeatureMatrix& data, double alpha);

/// Cyclic coordinate descent with soft-thresholding for the L1 part, so
/// weights hit exact zeros. Each coordinate first tries a step on the local
/// curvature and keeps it only if the objective drops; otherwise it takes the
/// step on the global quadratic majorizer (curvature bound 1/4), which always
/// descends. Stops when the largest coefficient change in a sweep is below
/// opt.tol; hitting max_iters leaves meta.converged false.
///
/// `objective_trace`, when given, receives the objective after every sweep.
LinearModel train(const FeatureMatrix& data, const PenaltyConfig& cfg, const TrainOptions& opt = {},
                  std::vector<double>* objective_trace = nullptr);

void write_model(std::ostream& out, const LinearModel& model);
void write_model(const std::filesystem::path& path, const LinearModel& model);
LinearModel read_model(std::istream& in);
LinearModel read_model(const std::filesystem::path& path);

}  // namespace seisdetect
