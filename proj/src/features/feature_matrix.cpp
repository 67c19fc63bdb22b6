#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "seisdetect/error.hpp"
#include "seisdetect/features.hpp"

namespace seisdetect {
namespace {

constexpr std::string_view kRolePrefix = "# role=";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "feature matrix line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::optional<std::size_t> FeatureMatrix::column(std::string_view code) const {
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == code) return i;
  }
  return std::nullopt;
}

void FeatureMatrix::append(const FeatureVector& v) {
  if (v.codes != codes) throw Error(ErrorCode::ShapeMismatch, "vector " + v.trace_id + " has different feature codes");
  trace_ids.push_back(v.trace_id);
  labels.push_back(v.label);
  values.insert(values.end(), v.values.begin(), v.values.end());
}

FeatureVector FeatureMatrix::vector(std::size_t r) const {
  const auto rv = row(r);
  return {trace_ids[r], labels[r], codes, {rv.begin(), rv.end()}};
}

FeatureMatrix FeatureMatrix::select_columns(const std::vector<std::string>& keep) const {
  std::vector<std::size_t> idx;
  for (const auto& code : keep) {
    const auto c = column(code);
    if (!c) throw Error(ErrorCode::MissingFeature, "feature matrix has no column " + code);
    idx.push_back(*c);
  }
  FeatureMatrix out;
  out.role = role;
  out.codes = keep;
  out.trace_ids = trace_ids;
  out.labels = labels;
  out.values.reserve(rows() * keep.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (auto c : idx) out.values.push_back(at(r, c));
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(const std::vector<std::size_t>& keep) const {
  FeatureMatrix out;
  out.role = role;
  out.codes = codes;
  for (auto r : keep) {
    out.trace_ids.push_back(trace_ids.at(r));
    out.labels.push_back(labels[r]);
    const auto rv = row(r);
    out.values.insert(out.values.end(), rv.begin(), rv.end());
  }
  return out;
}

void FeatureMatrix::check_shape() const {
  if (labels.size() != trace_ids.size() || values.size() != trace_ids.size() * codes.size()) {
    throw Error(ErrorCode::ShapeMismatch, "feature matrix has inconsistent row/column storage");
  }
}

void write_feature_matrix(std::ostream& out, const FeatureMatrix& m) {
  m.check_shape();
  out << kRolePrefix << to_string(m.role) << '\n';
  out << "trace_id,label";
  for (const auto& c : m.codes) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << m.trace_ids[r] << ',' << to_string(m.labels[r]);
    for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << format_double(m.at(r, c));
    out << '\n';
  }
}

void write_feature_matrix(const std::filesystem::path& path, const FeatureMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_feature_matrix(out, m);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

FeatureMatrix read_feature_matrix(std::istream& in) {
  FeatureMatrix m;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "feature matrix is empty");
  ++lineno;
  if (line.rfind(kRolePrefix, 0) != 0) fail_line(lineno, "expected '# role=<role>'");
  m.role = parse_role(std::string_view(line).substr(kRolePrefix.size()));

  if (!std::getline(in, line)) fail_line(lineno + 1, "missing header row");
  ++lineno;
  const auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "trace_id" || header[1] != "label") {
    fail_line(lineno, "header must start with trace_id,label");
  }
  m.codes.assign(header.begin() + 2, header.end());
  for (std::size_t i = 0; i < m.codes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (m.codes[i] == m.codes[j]) fail_line(lineno, "duplicate column " + m.codes[i]);
    }
  }

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      fail_line(lineno, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) fail_line(lineno, "empty trace_id");
    m.trace_ids.push_back(fields[0]);
    try {
      m.labels.push_back(parse_label(fields[1]));
    } catch (const Error& e) {
      fail_line(lineno, e.detail());
    }
    for (std::size_t c = 2; c < fields.size(); ++c) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(fields[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != fields[c].size() || !std::isfinite(v)) {
        fail_line(lineno, "column " + header[c] + " is not a finite number: '" + fields[c] + "'");
      }
      m.values.push_back(v);
    }
  }
  return m;
}

FeatureMatrix read_feature_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return read_feature_matrix(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::optional<std::size_t> StandardizationParams::index(std::string_view code) const {
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i] == code) return i;
  }
  return std::nullopt;
}

StandardizationParams standardize_fit(const FeatureMatrix& m) {
  m.check_shape();
  if (m.rows() == 0) throw Error(ErrorCode::DegenerateInput, "cannot fit standardization on an empty matrix");
  StandardizationParams p;
  p.codes = m.codes;
  p.mean.assign(m.cols(), 0.0);
  p.stddev.assign(m.cols(), 0.0);
  std::string constant;
  const auto n = static_cast<double>(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) sum += m.at(r, c);
    const double mu = sum / n;
    double ss = 0.0;
    bool varies = false;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      ss += (m.at(r, c) - mu) * (m.at(r, c) - mu);
      if (m.at(r, c) != m.at(0, c)) varies = true;
    }
    if (!varies) {
      constant += (constant.empty() ? "" : ", ") + m.codes[c];
      continue;
    }
    p.mean[c] = mu;
    p.stddev[c] = std::sqrt(ss / (n - 1.0));
  }
  if (!constant.empty()) throw Error(ErrorCode::ZeroVariance, "constant feature(s): " + constant);
  return p;
}

FeatureMatrix standardize_apply(const FeatureMatrix& m, const StandardizationParams& params) {
  m.check_shape();
  std::vector<std::size_t> idx;
  std::string missing;
  for (const auto& code : m.codes) {
    const auto i = params.index(code);
    if (!i) missing += (missing.empty() ? "" : ", ") + code;
    idx.push_back(i.value_or(0));
  }
  if (!missing.empty()) throw Error(ErrorCode::MissingParams, "no standardization for: " + missing);
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out.at(r, c) = (m.at(r, c) - params.mean[idx[c]]) / params.stddev[idx[c]];
    }
  }
  return out;
}

FeatureVector standardize_apply(const FeatureVector& v, const StandardizationParams& params) {
  FeatureMatrix m;
  m.codes = v.codes;
  m.append(v);
  return standardize_apply(m, params).vector(0);
}

}  // namespace seisdetect
