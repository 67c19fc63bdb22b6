#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "seisdetect/cli.hpp"
#include "seisdetect/error.hpp"

namespace seisdetect::cli {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::InvalidConfig, "config." + field + ": " + what);
}

void check_keys(const json& obj, const std::string& section, const std::set<std::string>& allowed) {
  if (!obj.is_object()) bad(section, "must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (allowed.count(key) == 0) bad(section.empty() ? key : section + "." + key, "unknown key");
  }
}

template <typename T>
void read(const json& obj, const std::string& section, const char* key, T& dst) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(section + "." + key, "has the wrong type");
  }
}

void read_size(const json& obj, const std::string& section, const char* key, std::size_t& dst) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(section + "." + key, "must be a nonnegative integer");
  dst = v.get<std::size_t>();
}

void read_int(const json& obj, const std::string& section, const char* key, int& dst) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) bad(section + "." + key, "must be an integer");
  dst = v.get<int>();
}

// Runs a component validator and re-labels its message with the config
// path. Validator messages that lead with "section.field ..." keep the field.
template <typename F>
void validated(const std::string& section, F&& check) {
  try {
    check();
  } catch (const Error& e) {
    const std::string& msg = e.detail();
    const std::string prefix = section + ".";
    const auto space = msg.find(' ');
    if (msg.rfind(prefix, 0) == 0 && space != std::string::npos) {
      bad(msg.substr(0, space), msg.substr(space + 1));
    }
    bad(section, msg);
  }
}

void parse_range(const json& obj, const std::string& section, const char* key, double& lo, double& hi) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    bad(section + "." + key, "must be a two-element numeric array");
  }
  lo = v[0].get<double>();
  hi = v[1].get<double>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "",
             {"master_seed", "synth", "preprocess", "features", "split", "penalty", "train", "ensemble", "selection",
              "sweep"});
  RunConfig cfg;
  if (root.contains("master_seed")) {
    const auto& v = root.at("master_seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      bad("master_seed", "must be a nonnegative integer");
    }
    cfg.master_seed = v.get<std::uint64_t>();
  }

  if (root.contains("synth")) {
    const auto& s = root.at("synth");
    check_keys(s, "synth", {"n_events", "traces_per_event", "n_noise", "n_pool", "fs", "window_len", "snr_range"});
    read_int(s, "synth", "n_events", cfg.synth.n_events);
    if (s.contains("traces_per_event")) {
      double lo = 0, hi = 0;
      parse_range(s, "synth", "traces_per_event", lo, hi);
      cfg.synth.traces_per_event_min = static_cast<int>(lo);
      cfg.synth.traces_per_event_max = static_cast<int>(hi);
    }
    read_int(s, "synth", "n_noise", cfg.synth.n_noise);
    read_int(s, "synth", "n_pool", cfg.synth_pool);
    read(s, "synth", "fs", cfg.synth.fs);
    read_size(s, "synth", "window_len", cfg.synth.window_len);
    parse_range(s, "synth", "snr_range", cfg.synth.snr_min, cfg.synth.snr_max);
    if (cfg.synth_pool < 0) bad("synth.n_pool", "must be >= 0");
  }
  validated("synth", [&] { cfg.synth.validate(); });

  if (root.contains("preprocess")) {
    const auto& s = root.at("preprocess");
    check_keys(s, "preprocess", {"band_low_hz", "band_high_hz", "downsample_factor", "filter_order", "window_len"});
    read(s, "preprocess", "band_low_hz", cfg.preprocess.band_low_hz);
    read(s, "preprocess", "band_high_hz", cfg.preprocess.band_high_hz);
    read_int(s, "preprocess", "downsample_factor", cfg.preprocess.downsample_factor);
    read_int(s, "preprocess", "filter_order", cfg.preprocess.filter_order);
    read_size(s, "preprocess", "window_len", cfg.preprocess.window_len);
    if (cfg.preprocess.downsample_factor < 1) bad("preprocess.downsample_factor", "must be >= 1");
    if (cfg.preprocess.filter_order < 1) bad("preprocess.filter_order", "must be >= 1");
    if (!(cfg.preprocess.band_low_hz > 0 && cfg.preprocess.band_low_hz < cfg.preprocess.band_high_hz)) {
      bad("preprocess", "band must satisfy 0 < band_low_hz < band_high_hz");
    }
  }

  if (root.contains("features")) {
    const auto& s = root.at("features");
    check_keys(s, "features", {"profile", "codes"});
    read(s, "features", "profile", cfg.features.profile);
    read(s, "features", "codes", cfg.features.codes);
    if (cfg.features.profile != "reproduction" && cfg.features.profile != "canonical" &&
        cfg.features.profile != "surrogate") {
      bad("features.profile", "must be reproduction, canonical or surrogate");
    }
  }

  if (root.contains("split")) {
    const auto& s = root.at("split");
    check_keys(s, "split", {"train", "validation", "test"});
    read(s, "split", "train", cfg.split.train);
    read(s, "split", "validation", cfg.split.validation);
    read(s, "split", "test", cfg.split.test);
  }
  validated("split", [&] { cfg.split.validate(); });

  if (root.contains("penalty")) {
    const auto& s = root.at("penalty");
    check_keys(s, "penalty", {"alpha", "lambda", "penalize_bias"});
    read(s, "penalty", "alpha", cfg.penalty.alpha);
    read(s, "penalty", "lambda", cfg.penalty.lambda);
    read(s, "penalty", "penalize_bias", cfg.penalty.penalize_bias);
  }
  validated("penalty", [&] { cfg.penalty.validate(); });

  if (root.contains("train")) {
    const auto& s = root.at("train");
    check_keys(s, "train", {"max_iters", "tol", "threshold"});
    read_int(s, "train", "max_iters", cfg.train.max_iters);
    read(s, "train", "tol", cfg.train.tol);
    read(s, "train", "threshold", cfg.threshold);
    if (cfg.train.max_iters < 1) bad("train.max_iters", "must be >= 1");
    if (!(cfg.train.tol > 0)) bad("train.tol", "must be > 0");
    if (!(cfg.threshold > 0 && cfg.threshold < 1)) bad("train.threshold", "must lie in (0, 1)");
  }
  cfg.ensemble.train = cfg.train;
  cfg.ensemble.alpha = cfg.penalty.alpha;
  cfg.ensemble.lambda = cfg.penalty.lambda;

  if (root.contains("ensemble")) {
    const auto& s = root.at("ensemble");
    check_keys(s, "ensemble", {"n_runs", "vary", "lambda_grid", "alpha", "lambda", "tie_tolerance", "subsample_fraction"});
    read_int(s, "ensemble", "n_runs", cfg.ensemble.n_runs);
    if (s.contains("vary")) {
      std::vector<std::string> axes;
      read(s, "ensemble", "vary", axes);
      cfg.ensemble.vary = {false, false, false};
      for (const auto& a : axes) {
        if (a == "seed") cfg.ensemble.vary.seed = true;
        else if (a == "lambda_grid") cfg.ensemble.vary.lambda_grid = true;
        else if (a == "subsample") cfg.ensemble.vary.subsample = true;
        else bad("ensemble.vary", "unknown axis '" + a + "'");
      }
    }
    read(s, "ensemble", "lambda_grid", cfg.ensemble.lambda_grid);
    read(s, "ensemble", "alpha", cfg.ensemble.alpha);
    read(s, "ensemble", "lambda", cfg.ensemble.lambda);
    read(s, "ensemble", "tie_tolerance", cfg.ensemble.tie_tolerance);
    read(s, "ensemble", "subsample_fraction", cfg.ensemble.subsample_fraction);
  }
  validated("ensemble", [&] { cfg.ensemble.validate(); });

  if (root.contains("selection")) {
    const auto& s = root.at("selection");
    check_keys(s, "selection", {"min_fraction_nonzero", "min_median_abs", "base_set"});
    read(s, "selection", "min_fraction_nonzero", cfg.rule.min_fraction_nonzero);
    read(s, "selection", "min_median_abs", cfg.rule.min_median_abs);
    read(s, "selection", "base_set", cfg.base_set);
    if (!(cfg.rule.min_fraction_nonzero >= 0 && cfg.rule.min_fraction_nonzero <= 1)) {
      bad("selection.min_fraction_nonzero", "must lie in [0, 1]");
    }
    if (!(cfg.rule.min_median_abs >= 0)) bad("selection.min_median_abs", "must be >= 0");
  }

  if (root.contains("sweep")) {
    const auto& s = root.at("sweep");
    check_keys(s, "sweep", {"ratios", "models", "predictions", "positives", "pools"});
    read(s, "sweep", "ratios", cfg.sweep.ratios.ratios);
    read(s, "sweep", "models", cfg.sweep.models);
    read(s, "sweep", "predictions", cfg.sweep.predictions);
    read(s, "sweep", "positives", cfg.sweep.positives);
    read(s, "sweep", "pools", cfg.sweep.pools);
  }
  validated("sweep", [&] { cfg.sweep.ratios.validate(); });
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace seisdetect::cli
