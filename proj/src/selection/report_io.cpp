#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "seisdetect/error.hpp"
#include "seisdetect/selection.hpp"

namespace seisdetect {

void write_selection_report(std::ostream& out, const SelectionReport& report) {
  using nlohmann::json;
  json j;
  j["format"] = "seisdetect-selection";
  j["version"] = 1;
  const auto& c = report.config;
  j["config"] = {{"n_runs", c.n_runs},
                 {"vary", {{"seed", c.vary.seed}, {"lambda_grid", c.vary.lambda_grid}, {"subsample", c.vary.subsample}}},
                 {"lambda_grid", c.lambda_grid},
                 {"lambda", c.lambda},
                 {"alpha", c.alpha},
                 {"tie_tolerance", c.tie_tolerance},
                 {"subsample_fraction", c.subsample_fraction},
                 {"seed", c.seed}};
  j["rule"] = {{"min_fraction_nonzero", report.rule.min_fraction_nonzero},
               {"min_median_abs", report.rule.min_median_abs}};
  j["base_set"] = report.base_set;
  json runs = json::array();
  for (const auto& r : report.runs) {
    json weights = json::object();
    for (std::size_t i = 0; i < r.codes.size(); ++i) weights[r.codes[i]] = r.weights[i];
    runs.push_back({{"run_id", r.run_id},
                    {"config_used",
                     {{"lambda", r.config_used.lambda},
                      {"init_seed", r.config_used.init_seed},
                      {"subsample_seed", r.config_used.subsample_seed},
                      {"n_train", r.config_used.n_train}}},
                    {"val_mcc", r.val_mcc},
                    {"converged", r.converged},
                    {"bias", r.bias},
                    {"weights", weights}});
  }
  j["runs"] = runs;
  j["tie_set"] = report.tie_set;
  json dist = json::array();
  for (const auto& s : report.distribution) {
    dist.push_back({{"code", s.code},
                    {"min", s.min},
                    {"max", s.max},
                    {"median", s.median},
                    {"median_abs", s.median_abs},
                    {"mean_abs", s.mean_abs},
                    {"fraction_nonzero", s.fraction_nonzero}});
  }
  j["distribution"] = dist;
  j["selected"] = report.selected;
  out << j.dump(2) << '\n';
}

void write_selection_report(const std::filesystem::path& path, const SelectionReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_selection_report(out, report);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::vector<std::string> read_selected_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("format") != "seisdetect-selection") throw Error(ErrorCode::ParseError, path.string() + ": not a selection report");
    return j.at("selected").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_distribution_table(std::ostream& out, const WeightDistribution& dist) {
  out << "code,min,max,median,median_abs,mean_abs,fraction_nonzero\n";
  char buf[256];
  for (const auto& s : dist) {
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.code.c_str(), s.min, s.max, s.median,
                  s.median_abs, s.mean_abs, s.fraction_nonzero);
    out << buf;
  }
}

}  // namespace seisdetect
