#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seisdetect/waveform.hpp"

namespace seisdetect {

// Event is the positive class.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const Label> labels, std::span<const Label> preds);

// Matthews correlation coefficient. The numerator and the four-factor
// product are formed exactly in 128-bit integers; only the final square root
// and division are floating point. Returns 0 when any factor is 0.
double mcc(const ConfusionMatrix& m);
double accuracy(const ConfusionMatrix& m);

struct McNemarResult {
  std::uint64_t b = 0;  // a correct, b wrong
  std::uint64_t c = 0;  // a wrong, b correct
  double p_value = 1.0;
  bool significant = false;
};

// Exact two-sided binomial p-value for b discordant successes out of b + c.
double mcnemar_exact_p(std::uint64_t b, std::uint64_t c);
McNemarResult mcnemar_test(std::span<const Label> labels, std::span<const Label> preds_a,
                           std::span<const Label> preds_b, double level = 0.05);

struct EvalReport {
  std::string source;
  ConfusionMatrix matrix;
  double mcc = 0.0;
  double accuracy = 0.0;
  std::uint64_t n_pos = 0;
  std::uint64_t n_neg = 0;
  double noise_ratio = 0.0;
};

EvalReport make_report(std::string source, const ConfusionMatrix& m);

struct PairedTest {
  std::string source_a;
  std::string source_b;
  double level = 0.05;
  McNemarResult result;
};

void write_eval_reports(std::ostream& out, const std::vector<EvalReport>& reports,
                        const std::vector<PairedTest>& tests = {});
void write_eval_reports(const std::filesystem::path& path, const std::vector<EvalReport>& reports,
                        const std::vector<PairedTest>& tests = {});

}  // namespace seisdetect
