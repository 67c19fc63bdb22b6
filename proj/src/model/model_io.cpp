#include <fstream>
#include <json.hpp>

#include "seisdetect/error.hpp"
#include "seisdetect/model.hpp"

namespace seisdetect {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "seisdetect-model";

}  // namespace

void write_model(std::ostream& out, const LinearModel& model) {
  json j;
  j["format"] = kFormat;
  j["version"] = 1;
  j["bias"] = model.bias;
  json weights = json::array();
  for (std::size_t i = 0; i < model.codes.size(); ++i) weights.push_back({{"code", model.codes[i]}, {"weight", model.weights[i]}});
  j["weights"] = weights;
  j["threshold"] = model.threshold;
  j["training_meta"] = {{"alpha", model.meta.alpha},       {"lambda", model.meta.lambda},
                        {"penalize_bias", model.meta.penalize_bias}, {"seed", model.meta.seed},
                        {"iterations", model.meta.iterations}, {"converged", model.meta.converged}};
  if (model.standardization) {
    const auto& s = *model.standardization;
    json cols = json::array();
    for (std::size_t i = 0; i < s.codes.size(); ++i) {
      cols.push_back({{"code", s.codes[i]}, {"mean", s.mean[i]}, {"stddev", s.stddev[i]}});
    }
    j["standardization"] = cols;
  } else {
    j["standardization"] = nullptr;
  }
  out << j.dump(2) << '\n';
}

void write_model(const std::filesystem::path& path, const LinearModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_model(out, model);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

LinearModel read_model(std::istream& in) {
  LinearModel m;
  try {
    const json j = json::parse(in);
    if (j.at("format") != kFormat) throw Error(ErrorCode::ParseError, "not a seisdetect model file");
    m.bias = j.at("bias").get<double>();
    for (const auto& w : j.at("weights")) {
      m.codes.push_back(w.at("code").get<std::string>());
      m.weights.push_back(w.at("weight").get<double>());
    }
    m.threshold = j.at("threshold").get<double>();
    const auto& meta = j.at("training_meta");
    m.meta.alpha = meta.at("alpha").get<double>();
    m.meta.lambda = meta.at("lambda").get<double>();
    m.meta.penalize_bias = meta.at("penalize_bias").get<bool>();
    m.meta.seed = meta.at("seed").get<std::uint64_t>();
    m.meta.iterations = meta.at("iterations").get<int>();
    m.meta.converged = meta.at("converged").get<bool>();
    const auto& s = j.at("standardization");
    if (!s.is_null()) {
      StandardizationParams p;
      for (const auto& c : s) {
        p.codes.push_back(c.at("code").get<std::string>());
        p.mean.push_back(c.at("mean").get<double>());
        p.stddev.push_back(c.at("stddev").get<double>());
      }
      m.standardization = std::move(p);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("model file: ") + e.what());
  }
  if (!(m.threshold > 0.0 && m.threshold < 1.0)) throw Error(ErrorCode::ParseError, "model threshold outside (0, 1)");
  return m;
}

LinearModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_model(in);
}

}  // namespace seisdetect
