#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <json.hpp>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "seisdetect/bench.hpp"
#include "seisdetect/error.hpp"

namespace seisdetect {
namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<Label> lookup(const PredictionSource& src, const FeatureMatrix& data) {
  std::vector<Label> out;
  out.reserve(data.rows());
  std::string missing;
  for (const auto& id : data.trace_ids) {
    const auto it = src.predictions.find(id);
    if (it == src.predictions.end()) {
      missing += (missing.empty() ? "" : ", ") + id;
      continue;
    }
    out.push_back(it->second);
  }
  if (!missing.empty()) throw Error(ErrorCode::IngestError, src.name + " has no prediction for: " + missing);
  return out;
}

}  // namespace

std::size_t noise_count(std::size_t n_positive, double ratio) {
  return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n_positive)));
}

std::vector<std::size_t> sample_noise(std::size_t pool_size, std::size_t n_positive, double ratio,
                                      std::uint64_t seed) {
  if (!(ratio > 0.0)) throw Error(ErrorCode::InvalidConfig, "ratio must be positive");
  const std::size_t need = noise_count(n_positive, ratio);
  if (need > pool_size) {
    throw Error(ErrorCode::InsufficientNoise, "ratio " + fmt("%g", ratio) + " needs " + std::to_string(need) +
                                                  " noise records but the pool has " + std::to_string(pool_size) +
                                                  " (short by " + std::to_string(need - pool_size) + ")");
  }
  std::vector<std::size_t> perm(pool_size);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  perm.resize(need);
  return perm;
}

RatioDataset build_ratio_dataset(const FeatureMatrix& positives, const FeatureMatrix& noise_pool, double ratio,
                                 std::uint64_t seed) {
  if (positives.rows() == 0) throw Error(ErrorCode::DegenerateInput, "ratio dataset needs at least one positive");
  const auto picked = sample_noise(noise_pool.rows(), positives.rows(), ratio, seed);
  RatioDataset out;
  out.requested_ratio = ratio;
  out.data = positives;
  const auto noise = noise_pool.select_columns(positives.codes).select_rows(picked);
  out.data.trace_ids.insert(out.data.trace_ids.end(), noise.trace_ids.begin(), noise.trace_ids.end());
  out.data.labels.insert(out.data.labels.end(), noise.labels.begin(), noise.labels.end());
  out.data.values.insert(out.data.values.end(), noise.values.begin(), noise.values.end());
  out.achieved_ratio = static_cast<double>(picked.size()) / static_cast<double>(positives.rows());
  return out;
}

void RatioSpec::validate() const {
  if (ratios.empty()) throw Error(ErrorCode::InvalidConfig, "ratio list must be non-empty");
  for (double r : ratios) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidConfig, "every ratio must be positive");
  }
}

double SweepResult::mcc(const std::string& source, double ratio) const {
  for (const auto& r : rows) {
    if (r.source == source && r.ratio == ratio) return r.report.mcc;
  }
  throw Error(ErrorCode::DegenerateInput, "no sweep row for " + source + " at ratio " + fmt("%g", ratio));
}

SweepResult sweep(const std::vector<NamedModel>& models, const std::vector<PredictionSource>& external,
                  const FeatureMatrix& positives, const FeatureMatrix& noise_pool, const RatioSpec& spec) {
  spec.validate();
  SweepResult res;
  res.ratios = spec.ratios;
  for (const auto& m : models) res.sources.push_back(m.name);
  for (const auto& e : external) res.sources.push_back(e.name);
  // Validate every ratio before evaluating any of them.
  for (double ratio : spec.ratios) sample_noise(noise_pool.rows(), positives.rows(), ratio, spec.seed);

  std::vector<std::vector<SweepRow>> per_ratio(spec.ratios.size());
  std::vector<std::exception_ptr> errors(spec.ratios.size());
  const auto n_ratios = static_cast<std::ptrdiff_t>(spec.ratios.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n_ratios; ++k) {
    try {
      const double ratio = spec.ratios[static_cast<std::size_t>(k)];
      const auto ds = build_ratio_dataset(positives, noise_pool, ratio, spec.seed);
      auto& rows = per_ratio[static_cast<std::size_t>(k)];
      for (const auto& m : models) {
        const auto preds = classify(m.model, prepare_inputs(m.model, ds.data));
        auto report = make_report(m.name, confusion(ds.data.labels, preds));
        rows.push_back({m.name, ratio, ds.achieved_ratio, report});
      }
      for (const auto& e : external) {
        const auto preds = lookup(e, ds.data);
        auto report = make_report(e.name, confusion(ds.data.labels, preds));
        rows.push_back({e.name, ratio, ds.achieved_ratio, report});
      }
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& rows : per_ratio) res.rows.insert(res.rows.end(), rows.begin(), rows.end());
  return res;
}

void write_sweep_text(std::ostream& out, const SweepResult& result) {
  std::size_t width = 6;
  for (const auto& s : result.sources) width = std::max(width, s.size());
  std::string line = "source";
  line.resize(width + 2, ' ');
  for (double r : result.ratios) {
    std::string head = fmt("%g:1", r);
    line += std::string(10 - std::min<std::size_t>(10, head.size()), ' ') + head;
  }
  out << "Test MCC by noise-to-event ratio\n" << line << '\n';
  for (const auto& s : result.sources) {
    std::string row = s;
    row.resize(width + 2, ' ');
    for (double r : result.ratios) row += fmt("%10.4f", result.mcc(s, r));
    out << row << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "source,ratio,achieved_ratio,tp,tn,fp,fn,mcc,accuracy\n";
  for (const auto& r : result.rows) {
    const auto& m = r.report.matrix;
    out << r.source << ',' << fmt("%.17g", r.ratio) << ',' << fmt("%.17g", r.achieved_ratio) << ',' << m.tp << ','
        << m.tn << ',' << m.fp << ',' << m.fn << ',' << fmt("%.17g", r.report.mcc) << ','
        << fmt("%.17g", r.report.accuracy) << '\n';
  }
}

void write_sweep_grid(std::ostream& out, const SweepResult& result) {
  out << "source";
  for (double r : result.ratios) out << ',' << fmt("%g", r);
  out << '\n';
  for (const auto& s : result.sources) {
    out << s;
    for (double r : result.ratios) out << ',' << fmt("%.17g", result.mcc(s, r));
    out << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepResult& result) {
  using nlohmann::json;
  json j;
  j["format"] = "seisdetect-sweep";
  j["version"] = 1;
  j["ratios"] = result.ratios;
  j["sources"] = result.sources;
  json rows = json::array();
  for (const auto& r : result.rows) {
    const auto& m = r.report.matrix;
    rows.push_back({{"source", r.source},
                    {"ratio", r.ratio},
                    {"achieved_ratio", r.achieved_ratio},
                    {"tp", m.tp},
                    {"tn", m.tn},
                    {"fp", m.fp},
                    {"fn", m.fn},
                    {"mcc", r.report.mcc},
                    {"accuracy", r.report.accuracy}});
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

}  // namespace seisdetect
