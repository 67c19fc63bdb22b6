#include "seisdetect/waveform_io.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <string>

namespace seisdetect {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "seisdetect-waveforms";

json to_json(const WaveformRecord& r) {
  json j;
  j["trace_id"] = r.trace_id;
  j["event_id"] = r.event_id ? json(*r.event_id) : json(nullptr);
  j["station"] = r.station;
  j["channel"] = r.channel;
  j["sample_rate"] = r.sample_rate;
  j["label"] = std::string(to_string(r.label));
  j["magnitude"] = r.magnitude ? json(*r.magnitude) : json(nullptr);
  j["samples"] = r.samples;
  return j;
}

WaveformRecord from_json(const json& j) {
  WaveformRecord r;
  r.trace_id = j.at("trace_id").get<std::string>();
  const auto& ev = j.at("event_id");
  if (!ev.is_null()) r.event_id = ev.get<std::string>();
  r.station = j.at("station").get<std::string>();
  r.channel = j.at("channel").get<std::string>();
  const auto& fs = j.at("sample_rate");
  if (!fs.is_number()) throw Error(ErrorCode::ParseError, "sample_rate must be a number");
  r.sample_rate = fs.get<double>();
  r.label = parse_label(j.at("label").get<std::string>());
  const auto& mag = j.at("magnitude");
  if (!mag.is_null()) {
    if (!mag.is_number()) throw Error(ErrorCode::ParseError, "magnitude must be a number or null");
    r.magnitude = mag.get<double>();
  }
  const auto& samples = j.at("samples");
  if (!samples.is_array()) throw Error(ErrorCode::ParseError, "samples must be an array");
  r.samples.reserve(samples.size());
  for (const auto& v : samples) {
    if (!v.is_number()) throw Error(ErrorCode::ParseError, "samples must contain only numbers");
    r.samples.push_back(v.get<double>());
  }
  return r;
}

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "waveform file line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_waveforms(std::ostream& out, const WaveformFile& file) {
  json header{{"format", kFormat}, {"version", 1}, {"role", std::string(to_string(file.role))}};
  out << header.dump() << '\n';
  for (const auto& r : file.records) out << to_json(r).dump() << '\n';
}

void write_waveforms(const std::filesystem::path& path, const WaveformFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_waveforms(out, file);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

WaveformFile read_waveforms(std::istream& in) {
  WaveformFile file;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_line(lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!have_header) {
      if (!j.is_object() || j.value("format", "") != kFormat) {
        fail_line(lineno, std::string("missing header {\"format\":\"") + kFormat + "\",...}");
      }
      if (j.value("version", 0) != 1) fail_line(lineno, "unsupported version");
      try {
        file.role = parse_role(j.value("role", "unassigned"));
      } catch (const Error& e) {
        fail_line(lineno, e.detail());
      }
      have_header = true;
      continue;
    }
    WaveformRecord r;
    try {
      r = from_json(j);
      r.validate();
    } catch (const json::exception& e) {
      fail_line(lineno, e.what());
    } catch (const Error& e) {
      fail_line(lineno, e.detail());
    }
    if (!seen.insert(r.trace_id).second) fail_line(lineno, "duplicate trace_id '" + r.trace_id + "'");
    file.records.push_back(std::move(r));
  }
  if (!have_header) throw Error(ErrorCode::ParseError, "waveform file is empty");
  return file;
}

WaveformFile read_waveforms(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_waveforms(in);
}

}  // namespace seisdetect
