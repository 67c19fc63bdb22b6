#include <exception>
#include <string>

#include "seisdetect/error.hpp"
#include "seisdetect/features.hpp"

namespace seisdetect {
namespace {

void check_selection(const FeatureRegistry& registry, const std::vector<std::string>& selected) {
  for (const auto& code : selected) registry.at(code);
}

FeatureMatrix empty_matrix(const std::vector<WaveformRecord>& records, const std::vector<std::string>& selected) {
  FeatureMatrix m;
  m.codes = selected;
  m.trace_ids.reserve(records.size());
  m.labels.reserve(records.size());
  for (const auto& r : records) {
    m.trace_ids.push_back(r.trace_id);
    m.labels.push_back(r.label);
  }
  m.values.assign(records.size() * selected.size(), 0.0);
  return m;
}

// Fills one row; returns an empty string on success or the failure reason.
std::string fill_row(FeatureMatrix& m, std::size_t row, const WaveformRecord& record, const FeatureRegistry& registry) {
  try {
    for (std::size_t c = 0; c < m.codes.size(); ++c) {
      m.at(row, c) = extract_feature(record.samples, registry, m.codes[c], record.sample_rate);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateSeries) throw;
    return e.detail();
  }
  return {};
}

void report_failures(const std::vector<WaveformRecord>& records, const std::vector<std::string>& reasons) {
  std::string msg;
  std::size_t n_failed = 0;
  for (std::size_t i = 0; i < reasons.size(); ++i) {
    if (reasons[i].empty()) continue;
    ++n_failed;
    msg += "\n  " + records[i].trace_id + ": " + reasons[i];
  }
  if (n_failed > 0) {
    throw Error(ErrorCode::DegenerateSeries, std::to_string(n_failed) + " trace(s) failed extraction:" + msg);
  }
}

}  // namespace

std::optional<double> FeatureVector::get(std::string_view code) const {
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == code) return values[i];
  }
  return std::nullopt;
}

FeatureVector extract_vector(const WaveformRecord& record, const FeatureRegistry& registry,
                             const std::vector<std::string>& selected) {
  check_selection(registry, selected);
  FeatureVector v;
  v.trace_id = record.trace_id;
  v.label = record.label;
  v.codes = selected;
  v.values.reserve(selected.size());
  for (const auto& code : selected) {
    v.values.push_back(extract_feature(record.samples, registry, code, record.sample_rate));
  }
  return v;
}

FeatureMatrix extract_matrix_serial(const std::vector<WaveformRecord>& records, const FeatureRegistry& registry,
                                    const std::vector<std::string>& selected) {
  check_selection(registry, selected);
  auto m = empty_matrix(records, selected);
  std::vector<std::string> reasons(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) reasons[i] = fill_row(m, i, records[i], registry);
  report_failures(records, reasons);
  return m;
}

FeatureMatrix extract_matrix(const std::vector<WaveformRecord>& records, const FeatureRegistry& registry,
                             const std::vector<std::string>& selected) {
  check_selection(registry, selected);
  auto m = empty_matrix(records, selected);
  std::vector<std::string> reasons(records.size());
  std::vector<std::exception_ptr> errors(records.size());
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      reasons[k] = fill_row(m, k, records[k], registry);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  report_failures(records, reasons);
  return m;
}

}  // namespace seisdetect
