#include <algorithm>
#include <cmath>
#include <string>

#include "seisdetect/error.hpp"
#include "seisdetect/model.hpp"

namespace seisdetect {
namespace {

// log(1 + exp(eta)) without overflow.
double softplus(double eta) { return eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta)); }

struct Problem {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<std::vector<double>> columns;
  std::vector<double> y;
};

Problem make_problem(const FeatureMatrix& data) {
  data.check_shape();
  if (data.rows() == 0) throw Error(ErrorCode::DegenerateInput, "training data is empty");
  Problem pr;
  pr.n = data.rows();
  pr.p = data.cols();
  pr.columns.assign(pr.p, std::vector<double>(pr.n));
  pr.y.resize(pr.n);
  std::size_t n_event = 0;
  for (std::size_t r = 0; r < pr.n; ++r) {
    pr.y[r] = data.labels[r] == Label::Event ? 1.0 : 0.0;
    n_event += data.labels[r] == Label::Event;
    for (std::size_t j = 0; j < pr.p; ++j) pr.columns[j][r] = data.at(r, j);
  }
  if (n_event == 0 || n_event == pr.n) {
    throw Error(ErrorCode::DegenerateLabels, "training data contains a single class (" + std::to_string(n_event) +
                                                 " events of " + std::to_string(pr.n) + ")");
  }
  return pr;
}

double objective(const Problem& pr, const std::vector<double>& eta, const LinearModel& m, const PenaltyConfig& cfg) {
  double nll = 0.0;
  for (std::size_t i = 0; i < pr.n; ++i) nll += softplus(eta[i]) - pr.y[i] * eta[i];
  return nll / static_cast<double>(pr.n) + penalty(m, cfg);
}

}  // namespace

double lambda_max(const FeatureMatrix& data, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidConfig, "lambda_max needs alpha > 0");
  const auto pr = make_problem(data);
  double ybar = 0.0;
  for (double v : pr.y) ybar += v;
  ybar /= static_cast<double>(pr.n);
  // At the intercept-only optimum every residual is y - ybar.
  double g = 0.0;
  for (const auto& col : pr.columns) {
    double s = 0.0;
    for (std::size_t i = 0; i < pr.n; ++i) s += (ybar - pr.y[i]) * col[i];
    g = std::max(g, std::fabs(s) / static_cast<double>(pr.n));
  }
  return g / alpha;
}

LinearModel train(const FeatureMatrix& data, const PenaltyConfig& cfg, const TrainOptions& opt,
                  std::vector<double>* objective_trace) {
  cfg.validate();
  if (opt.max_iters < 1) throw Error(ErrorCode::InvalidConfig, "train.max_iters must be >= 1");
  if (!(opt.tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "train.tol must be > 0");
  const auto pr = make_problem(data);
  const auto n = static_cast<double>(pr.n);

  LinearModel m;
  m.codes = data.codes;
  m.weights.assign(pr.p, 0.0);
  m.meta = {cfg.alpha, cfg.lambda, cfg.penalize_bias, opt.seed, 0, false};

  // Logistic curvature is at most 1/4, giving a fixed quadratic bound per
  // coordinate.
  std::vector<double> bound(pr.p);
  for (std::size_t j = 0; j < pr.p; ++j) {
    double ss = 0.0;
    for (double v : pr.columns[j]) ss += v * v;
    bound[j] = ss / (4.0 * n);
  }
  const double bias_bound = 0.25;
  const double l1 = cfg.lambda * cfg.alpha;
  const double l2 = 2.0 * cfg.lambda * (1.0 - cfg.alpha);

  // Per-row state: linear predictor, softplus(eta) and sigmoid(eta) - y.
  std::vector<double> eta(pr.n, 0.0), sp(pr.n), resid(pr.n);
  std::vector<double> cand_eta(pr.n), cand_sp(pr.n);
  const std::vector<double> ones(pr.n, 1.0);
  for (std::size_t i = 0; i < pr.n; ++i) {
    sp[i] = softplus(0.0);
    resid[i] = 0.5 - pr.y[i];
  }

  auto coef_penalty = [&](double w) { return l1 * std::fabs(w) + 0.5 * l2 * w * w; };

  // One coordinate update on column `col` (all ones for the bias). The step
  // from the local curvature is tried first and kept only if it lowers the
  // exact objective; otherwise the step minimizing the global 1/4 curvature
  // majorizer is taken, which can never increase it.
  auto update = [&](double& coef, const std::vector<double>& col, double bound_j, bool penalized) {
    double g = 0.0, h = 0.0;
    for (std::size_t i = 0; i < pr.n; ++i) {
      g += resid[i] * col[i];
      const double p = resid[i] + pr.y[i];
      h += p * (1.0 - p) * col[i] * col[i];
    }
    g /= n;
    h /= n;
    const double a = penalized ? l1 : 0.0;
    const double b = penalized ? l2 : 0.0;
    const double old = coef;
    const double pen_old = penalized ? coef_penalty(old) : 0.0;

    auto try_step = [&](double next, bool must_accept) {
      const double d = next - old;
      if (d == 0.0) return true;
      double delta = 0.0;
      for (std::size_t i = 0; i < pr.n; ++i) {
        cand_eta[i] = eta[i] + d * col[i];
        cand_sp[i] = softplus(cand_eta[i]);
        delta += cand_sp[i] - sp[i] - pr.y[i] * d * col[i];
      }
      delta = delta / n + (penalized ? coef_penalty(next) : 0.0) - pen_old;
      if (!must_accept && !(delta < 0.0)) return false;
      for (std::size_t i = 0; i < pr.n; ++i) {
        eta[i] = cand_eta[i];
        sp[i] = cand_sp[i];
        resid[i] = std::exp(eta[i] - sp[i]) - pr.y[i];
      }
      coef = next;
      return true;
    };

    const double local_den = h + b;
    bool done = false;
    if (local_den > bound_j + b || local_den <= 0.0) {
      // Local curvature is not below the global bound: the majorizer step
      // is already the better-scaled one.
    } else {
      done = try_step(soft_threshold(h * old - g, a) / local_den, false);
    }
    if (!done) try_step(soft_threshold(bound_j * old - g, a) / (bound_j + b), true);
    return std::fabs(coef - old);
  };

  for (int sweep = 1; sweep <= opt.max_iters; ++sweep) {
    double max_change = update(m.bias, ones, bias_bound, cfg.penalize_bias);
    for (std::size_t j = 0; j < pr.p; ++j) {
      if (bound[j] == 0.0) continue;
      max_change = std::max(max_change, update(m.weights[j], pr.columns[j], bound[j], true));
    }
    m.meta.iterations = sweep;
    if (objective_trace) objective_trace->push_back(objective(pr, eta, m, cfg));
    if (max_change < opt.tol) {
      m.meta.converged = true;
      break;
    }
  }
  return m;
}

}  // namespace seisdetect
