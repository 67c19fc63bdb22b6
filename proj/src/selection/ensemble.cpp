#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>

#include "seisdetect/error.hpp"
#include "seisdetect/eval.hpp"
#include "seisdetect/seeds.hpp"
#include "seisdetect/selection.hpp"

namespace seisdetect {
namespace {

RunConfig plan_run(const EnsembleConfig& cfg, int run_id) {
  RunConfig rc;
  const auto id = static_cast<std::uint64_t>(run_id);
  rc.lambda = cfg.vary.lambda_grid ? cfg.lambda_grid[id % cfg.lambda_grid.size()] : cfg.lambda;
  rc.init_seed = derive_seed(cfg.seed, "ensemble.init", cfg.vary.seed ? id : 0);
  rc.subsample_seed = derive_seed(cfg.seed, "ensemble.subsample", id);
  return rc;
}

// Per-class draw without replacement so both classes survive; rows are
// returned in ascending order.
std::vector<std::size_t> subsample_rows(const FeatureMatrix& m, double fraction, std::uint64_t seed) {
  std::vector<std::size_t> events, noise;
  for (std::size_t r = 0; r < m.rows(); ++r) (m.labels[r] == Label::Event ? events : noise).push_back(r);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> keep;
  for (auto* group : {&events, &noise}) {
    const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(fraction * group->size())));
    std::shuffle(group->begin(), group->end(), rng);
    keep.insert(keep.end(), group->begin(), group->begin() + static_cast<std::ptrdiff_t>(std::min(k, group->size())));
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

struct Prepared {
  FeatureMatrix train;
  FeatureMatrix validation;
};

Prepared prepare(const FeatureMatrix& train, const FeatureMatrix& validation, const EnsembleConfig& cfg) {
  cfg.validate();
  if (train.role == DataRole::Test || validation.role == DataRole::Test) {
    throw Error(ErrorCode::RoleViolation, "feature selection must not read test-partition data");
  }
  const auto params = standardize_fit(train);
  return {standardize_apply(train, params), standardize_apply(validation.select_columns(train.codes), params)};
}

EnsembleRunResult execute_run(const Prepared& data, const EnsembleConfig& cfg, int run_id) {
  EnsembleRunResult res;
  res.run_id = run_id;
  res.config_used = plan_run(cfg, run_id);
  try {
    const FeatureMatrix& full = data.train;
    FeatureMatrix sub;
    const FeatureMatrix* fit_on = &full;
    if (cfg.vary.subsample) {
      sub = full.select_rows(subsample_rows(full, cfg.subsample_fraction, res.config_used.subsample_seed));
      fit_on = &sub;
    }
    res.config_used.n_train = fit_on->rows();
    PenaltyConfig pen{cfg.alpha, res.config_used.lambda, false};
    TrainOptions opt = cfg.train;
    opt.seed = res.config_used.init_seed;
    const auto model = train(*fit_on, pen, opt);
    res.codes = model.codes;
    res.weights = model.weights;
    res.bias = model.bias;
    res.converged = model.meta.converged;
    res.val_mcc = mcc(confusion(data.validation.labels, classify(model, data.validation)));
  } catch (const Error& e) {
    throw Error(e.code(), "ensemble run " + std::to_string(run_id) + ": " + e.detail());
  }
  return res;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void EnsembleConfig::validate() const {
  if (n_runs < 1) throw Error(ErrorCode::InvalidConfig, "ensemble.n_runs must be >= 1");
  if (vary.lambda_grid && lambda_grid.empty()) {
    throw Error(ErrorCode::InvalidConfig, "ensemble.lambda_grid must be non-empty when varied");
  }
  for (double l : lambda_grid) {
    if (!(l >= 0.0)) throw Error(ErrorCode::InvalidConfig, "ensemble.lambda_grid entries must be >= 0");
  }
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidConfig, "ensemble.lambda must be >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidConfig, "ensemble.alpha must lie in [0, 1]");
  if (!(tie_tolerance >= 0.0)) throw Error(ErrorCode::InvalidConfig, "ensemble.tie_tolerance must be >= 0");
  if (!(subsample_fraction > 0.0 && subsample_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "ensemble.subsample_fraction must lie in (0, 1]");
  }
}

std::vector<EnsembleRunResult> run_ensemble_serial(const FeatureMatrix& train, const FeatureMatrix& validation,
                                                   const EnsembleConfig& cfg) {
  const auto data = prepare(train, validation, cfg);
  std::vector<EnsembleRunResult> out;
  out.reserve(static_cast<std::size_t>(cfg.n_runs));
  for (int r = 0; r < cfg.n_runs; ++r) out.push_back(execute_run(data, cfg, r));
  return out;
}

std::vector<EnsembleRunResult> run_ensemble(const FeatureMatrix& train, const FeatureMatrix& validation,
                                            const EnsembleConfig& cfg) {
  const auto data = prepare(train, validation, cfg);
  std::vector<EnsembleRunResult> out(static_cast<std::size_t>(cfg.n_runs));
  std::vector<std::exception_ptr> errors(out.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < cfg.n_runs; ++r) {
    try {
      out[static_cast<std::size_t>(r)] = execute_run(data, cfg, r);
    } catch (...) {
      errors[static_cast<std::size_t>(r)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<EnsembleRunResult> best_models(const std::vector<EnsembleRunResult>& results, double tie_tolerance) {
  if (results.empty()) return {};
  double best = results.front().val_mcc;
  for (const auto& r : results) best = std::max(best, r.val_mcc);
  std::vector<EnsembleRunResult> out;
  for (const auto& r : results) {
    if (r.val_mcc >= best - tie_tolerance) out.push_back(r);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.run_id < b.run_id; });
  return out;
}

WeightDistribution weight_distributions(const std::vector<EnsembleRunResult>& tie_set) {
  if (tie_set.empty()) throw Error(ErrorCode::DegenerateInput, "weight distribution of an empty tie-set");
  const auto& codes = tie_set.front().codes;
  WeightDistribution dist;
  for (std::size_t j = 0; j < codes.size(); ++j) {
    std::vector<double> w, a;
    std::size_t nonzero = 0;
    for (const auto& run : tie_set) {
      if (run.codes != codes) throw Error(ErrorCode::ShapeMismatch, "tie-set runs disagree on feature codes");
      w.push_back(run.weights[j]);
      a.push_back(std::fabs(run.weights[j]));
      nonzero += run.weights[j] != 0.0;
    }
    FeatureWeightStats s;
    s.code = codes[j];
    s.min = *std::min_element(w.begin(), w.end());
    s.max = *std::max_element(w.begin(), w.end());
    s.median = median_of(w);
    s.median_abs = median_of(a);
    double sum_abs = 0.0;
    for (double v : a) sum_abs += v;
    s.mean_abs = sum_abs / static_cast<double>(a.size());
    s.fraction_nonzero = static_cast<double>(nonzero) / static_cast<double>(tie_set.size());
    dist.push_back(s);
  }
  return dist;
}

std::vector<std::string> select_features(const WeightDistribution& dist, const SelectionRule& rule,
                                         const std::vector<std::string>& base_set) {
  std::vector<std::string> out;
  auto add = [&](const std::string& code) {
    if (std::find(out.begin(), out.end(), code) == out.end()) out.push_back(code);
  };
  for (const auto& code : base_set) add(code);
  for (const auto& s : dist) {
    if (s.fraction_nonzero >= rule.min_fraction_nonzero && s.median_abs >= rule.min_median_abs && s.fraction_nonzero > 0) {
      add(s.code);
    }
  }
  return out;
}

}  // namespace seisdetect
