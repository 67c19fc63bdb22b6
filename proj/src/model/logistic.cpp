#include <algorithm>
#include <cmath>
#include <string>

#include "seisdetect/error.hpp"
#include "seisdetect/model.hpp"

namespace seisdetect {
namespace {

constexpr double kProbClamp = 1e-12;

double linear_predictor(const LinearModel& model, std::span<const double> row) {
  double eta = model.bias;
  for (std::size_t j = 0; j < row.size(); ++j) eta += model.weights[j] * row[j];
  return eta;
}

void check_columns(const LinearModel& model, const FeatureMatrix& data) {
  if (data.codes != model.codes) {
    throw Error(ErrorCode::MissingFeature, "data columns do not match the model's feature order");
  }
}

}  // namespace

void PenaltyConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidConfig, "penalty.alpha must lie in [0, 1]");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidConfig, "penalty.lambda must be a finite nonnegative number");
  }
}

std::optional<double> LinearModel::weight(std::string_view code) const {
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == code) return weights[i];
  }
  return std::nullopt;
}

std::size_t LinearModel::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(weights.begin(), weights.end(), [](double w) { return w != 0.0; }));
}

double sigmoid(double eta) {
  if (eta >= 0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

double penalty(std::span<const double> weights, const PenaltyConfig& cfg) {
  double l1 = 0.0, l2 = 0.0;
  for (double w : weights) {
    l1 += std::fabs(w);
    l2 += w * w;
  }
  return cfg.lambda * (cfg.alpha * l1 + (1.0 - cfg.alpha) * l2);
}

double penalty(const LinearModel& model, const PenaltyConfig& cfg) {
  double p = penalty(model.weights, cfg);
  if (cfg.penalize_bias) {
    const double b = model.bias;
    p += cfg.lambda * (cfg.alpha * std::fabs(b) + (1.0 - cfg.alpha) * b * b);
  }
  return p;
}

double predict_proba(const LinearModel& model, const FeatureVector& x) {
  double eta = model.bias;
  for (std::size_t j = 0; j < model.codes.size(); ++j) {
    const auto v = x.get(model.codes[j]);
    if (!v) throw Error(ErrorCode::MissingFeature, "input " + x.trace_id + " lacks feature " + model.codes[j]);
    eta += model.weights[j] * *v;
  }
  return sigmoid(eta);
}

std::vector<double> predict_proba(const LinearModel& model, const FeatureMatrix& data) {
  check_columns(model, data);
  std::vector<double> p(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) p[r] = sigmoid(linear_predictor(model, data.row(r)));
  return p;
}

Label classify(const LinearModel& model, const FeatureVector& x, double threshold) {
  return predict_proba(model, x) >= threshold ? Label::Event : Label::Noise;
}

Label classify(const LinearModel& model, const FeatureVector& x) { return classify(model, x, model.threshold); }

std::vector<Label> classify(const LinearModel& model, const FeatureMatrix& data) {
  const auto p = predict_proba(model, data);
  std::vector<Label> out(p.size());
  std::transform(p.begin(), p.end(), out.begin(),
                 [&](double v) { return v >= model.threshold ? Label::Event : Label::Noise; });
  return out;
}

FeatureMatrix prepare_inputs(const LinearModel& model, const FeatureMatrix& raw) {
  auto aligned = raw.select_columns(model.codes);
  if (model.standardization) aligned = standardize_apply(aligned, *model.standardization);
  return aligned;
}

double loss(const LinearModel& model, const FeatureMatrix& data, const PenaltyConfig& cfg) {
  check_columns(model, data);
  double nll = 0.0;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const double p = std::clamp(sigmoid(linear_predictor(model, data.row(r))), kProbClamp, 1.0 - kProbClamp);
    nll -= data.labels[r] == Label::Event ? std::log(p) : std::log1p(-p);
  }
  return nll / static_cast<double>(data.rows()) + penalty(model, cfg);
}

std::vector<double> nll_gradient(const LinearModel& model, const FeatureMatrix& data) {
  check_columns(model, data);
  std::vector<double> g(data.cols() + 1, 0.0);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto row = data.row(r);
    const double resid = sigmoid(linear_predictor(model, row)) - (data.labels[r] == Label::Event ? 1.0 : 0.0);
    g[0] += resid;
    for (std::size_t j = 0; j < row.size(); ++j) g[j + 1] += resid * row[j];
  }
  for (double& v : g) v /= static_cast<double>(data.rows());
  return g;
}

}  // namespace seisdetect
