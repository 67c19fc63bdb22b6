#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seisdetect/bench.hpp"
#include "seisdetect/model.hpp"
#include "seisdetect/selection.hpp"
#include "seisdetect/waveform.hpp"

namespace seisdetect::cli {

struct FeatureProfile {
  // "reproduction" (W1-W4, C1-C22), "canonical" (C1-C22) or "surrogate" (W1-W4).
  std::string profile = "reproduction";
  // Explicit codes override the profile when non-empty.
  std::vector<std::string> codes;
};

struct SweepCampaign {
  RatioSpec ratios;
  std::vector<std::string> models;
  std::vector<std::string> predictions;
  std::vector<std::string> positives;
  std::vector<std::string> pools;
};

/// Every parameter record a command can read, with defaults matching the
/// reproduction profile. Loaded from a JSON object with one key per section.
struct RunConfig {
  std::uint64_t master_seed = 0;
  SyntheticSpec synth;
  int synth_pool = 0;
  PreprocessConfig preprocess;
  FeatureProfile features;
  SplitSpec split;
  PenaltyConfig penalty;
  TrainOptions train;
  double threshold = 0.5;
  EnsembleConfig ensemble;
  SelectionRule rule;
  std::vector<std::string> base_set{"W1", "W2", "W3", "W4"};
  SweepCampaign sweep;
};

// Field-qualified InvalidConfig errors ("config.synth.fs: ...") for bad
// values and unknown keys.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

// Entry point shared by the executable and the tests. Returns the process
// exit code; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seisdetect::cli
