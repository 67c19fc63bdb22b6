#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seisdetect/role.hpp"
#include "seisdetect/waveform.hpp"

namespace seisdetect {

/// Metadata and kernel for one registered feature.
///
/// `compute` receives the raw (preprocessed) trace and its sample rate. The
/// registry has already checked length, finiteness and non-constancy.
struct FeatureInfo {
  std::string code;
  std::string name;
  std::string description;
  std::size_t min_length = 10;
  // True when the value is unchanged by x -> a*x + b for any a > 0.
  bool affine_invariant = true;
  std::function<double(std::span<const double>, double)> compute;
};

/// Ordered, immutable-after-construction feature catalog. Codes are unique;
/// iteration order is insertion order.
class FeatureRegistry {
 public:
  void add(FeatureInfo info);
  // Appends every entry of `other`; duplicate codes are rejected.
  void merge(const FeatureRegistry& other);

  bool contains(std::string_view code) const;
  const FeatureInfo& at(std::string_view code) const;
  std::vector<std::string> list() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<FeatureInfo> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// C1..C22.
const FeatureRegistry& canonical_registry();
// W1..W4 stand-ins for the prior model's four inputs.
const FeatureRegistry& surrogate_registry();
// W1..W4 followed by C1..C22.
const FeatureRegistry& reproduction_registry();

std::vector<std::string> list_features(const FeatureRegistry& registry);

// Throws DegenerateSeries for short, non-finite or constant input and
// UnknownFeature for unregistered codes.
double extract_feature(std::span<const double> samples, const FeatureRegistry& registry,
                       std::string_view code, double sample_rate = 1.0);

struct FeatureVector {
  std::string trace_id;
  Label label = Label::Noise;
  std::vector<std::string> codes;
  std::vector<double> values;

  std::optional<double> get(std::string_view code) const;
};

FeatureVector extract_vector(const WaveformRecord& record, const FeatureRegistry& registry,
                             const std::vector<std::string>& selected);

/// Row-major table of feature values, one row per trace.
struct FeatureMatrix {
  DataRole role = DataRole::Unassigned;
  std::vector<std::string> codes;
  std::vector<std::string> trace_ids;
  std::vector<Label> labels;
  std::vector<double> values;

  std::size_t rows() const { return trace_ids.size(); }
  std::size_t cols() const { return codes.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * codes.size() + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * codes.size() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * codes.size(), codes.size()};
  }

  std::optional<std::size_t> column(std::string_view code) const;
  void append(const FeatureVector& v);
  FeatureVector vector(std::size_t r) const;
  // Keeps the given columns in the given order; MissingFeature if absent.
  FeatureMatrix select_columns(const std::vector<std::string>& keep) const;
  FeatureMatrix select_rows(const std::vector<std::size_t>& keep) const;
  // Throws ShapeMismatch when sizes disagree.
  void check_shape() const;
};

// Batch extraction. Every degenerate trace is collected and reported in one
// DegenerateSeries error; no partial matrix is returned.
FeatureMatrix extract_matrix_serial(const std::vector<WaveformRecord>& records, const FeatureRegistry& registry,
                                    const std::vector<std::string>& selected);
FeatureMatrix extract_matrix(const std::vector<WaveformRecord>& records, const FeatureRegistry& registry,
                             const std::vector<std::string>& selected);

void write_feature_matrix(std::ostream& out, const FeatureMatrix& m);
void write_feature_matrix(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix read_feature_matrix(std::istream& in);
FeatureMatrix read_feature_matrix(const std::filesystem::path& path);

/// Per-column z-score parameters. The standard deviation uses the sample
/// (n - 1) estimator, the same convention as the catalog's internal z-score.
struct StandardizationParams {
  std::vector<std::string> codes;
  std::vector<double> mean;
  std::vector<double> stddev;

  std::optional<std::size_t> index(std::string_view code) const;
};

// ZeroVariance names every constant column.
StandardizationParams standardize_fit(const FeatureMatrix& m);
// MissingParams names every column without parameters.
FeatureMatrix standardize_apply(const FeatureMatrix& m, const StandardizationParams& params);
FeatureVector standardize_apply(const FeatureVector& v, const StandardizationParams& params);

}  // namespace seisdetect
