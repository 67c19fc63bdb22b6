#include <fstream>
#include <json.hpp>

#include "seisdetect/error.hpp"
#include "seisdetect/eval.hpp"

namespace seisdetect {

void write_eval_reports(std::ostream& out, const std::vector<EvalReport>& reports,
                        const std::vector<PairedTest>& tests) {
  using nlohmann::json;
  json j;
  j["format"] = "seisdetect-eval";
  j["version"] = 1;
  json rows = json::array();
  for (const auto& r : reports) {
    rows.push_back({{"source", r.source},
                    {"tp", r.matrix.tp},
                    {"tn", r.matrix.tn},
                    {"fp", r.matrix.fp},
                    {"fn", r.matrix.fn},
                    {"mcc", r.mcc},
                    {"accuracy", r.accuracy},
                    {"n_pos", r.n_pos},
                    {"n_neg", r.n_neg},
                    {"noise_ratio", r.noise_ratio}});
  }
  j["reports"] = rows;
  json paired = json::array();
  for (const auto& t : tests) {
    paired.push_back({{"source_a", t.source_a},
                      {"source_b", t.source_b},
                      {"test", "mcnemar_exact"},
                      {"b", t.result.b},
                      {"c", t.result.c},
                      {"p_value", t.result.p_value},
                      {"level", t.level},
                      {"significant", t.result.significant}});
  }
  j["paired_tests"] = paired;
  out << j.dump(2) << '\n';
}

void write_eval_reports(const std::filesystem::path& path, const std::vector<EvalReport>& reports,
                        const std::vector<PairedTest>& tests) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_eval_reports(out, reports, tests);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace seisdetect
