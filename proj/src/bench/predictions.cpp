#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "seisdetect/bench.hpp"
#include "seisdetect/error.hpp"

namespace seisdetect {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::IngestError, "predictions line " + std::to_string(line) + ": " + what);
}

double parse_number(std::size_t line, const std::string& text, const char* column) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) fail(line, std::string(column) + " is not a number: '" + text + "'");
  return v;
}

std::string join(const std::vector<std::string>& ids) {
  std::string s;
  for (const auto& id : ids) s += (s.empty() ? "" : ", ") + id;
  return s;
}

}  // namespace

std::map<std::string, Label> ingest_predictions(std::istream& in, const std::vector<std::string>& expected_ids) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::IngestError, "predictions file is empty");
  const auto header = split_csv(line);
  auto col = [&](const char* name) -> std::ptrdiff_t {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  };
  const auto c_id = col("trace_id");
  const auto c_label = col("label");
  const auto c_prob = col("probability");
  const auto c_thr = col("threshold");
  if (c_id < 0) fail(1, "header lacks a trace_id column");
  if ((c_label < 0) == (c_prob < 0)) fail(1, "header needs exactly one of label or probability");

  const std::set<std::string> expected(expected_ids.begin(), expected_ids.end());
  std::map<std::string, Label> out;
  std::set<std::string> duplicates;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) fail(lineno, "expected " + std::to_string(header.size()) + " fields");
    const std::string& id = f[static_cast<std::size_t>(c_id)];
    Label label;
    if (c_label >= 0) {
      const std::string& t = f[static_cast<std::size_t>(c_label)];
      if (t == "1") label = Label::Event;
      else if (t == "0") label = Label::Noise;
      else {
        try {
          label = parse_label(t);
        } catch (const Error&) {
          fail(lineno, "label must be event, noise, 1 or 0: '" + t + "'");
        }
      }
    } else {
      const double p = parse_number(lineno, f[static_cast<std::size_t>(c_prob)], "probability");
      const double thr = c_thr >= 0 ? parse_number(lineno, f[static_cast<std::size_t>(c_thr)], "threshold") : 0.5;
      if (p < 0.0 || p > 1.0) fail(lineno, "probability outside [0, 1]");
      label = p >= thr ? Label::Event : Label::Noise;
    }
    if (expected.count(id) == 0) continue;
    if (!out.emplace(id, label).second) duplicates.insert(id);
  }
  std::vector<std::string> missing;
  for (const auto& id : expected_ids) {
    if (out.count(id) == 0) missing.push_back(id);
  }
  if (!missing.empty() || !duplicates.empty()) {
    std::string msg;
    if (!missing.empty()) msg += "missing trace_id(s): " + join(missing);
    if (!duplicates.empty()) {
      msg += (msg.empty() ? "" : "; ") +
             std::string("duplicate trace_id(s): ") + join({duplicates.begin(), duplicates.end()});
    }
    throw Error(ErrorCode::IngestError, msg);
  }
  return out;
}

std::map<std::string, Label> ingest_predictions(const std::filesystem::path& path,
                                                const std::vector<std::string>& expected_ids) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return ingest_predictions(in, expected_ids);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace seisdetect
