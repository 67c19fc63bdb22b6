#include <algorithm>
#include <cmath>
#include <string>

#include "seisdetect/error.hpp"
#include "seisdetect/eval.hpp"

namespace seisdetect {
namespace {

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::ShapeMismatch,
                "sequence lengths differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// log C(n, k) * 0.5^n, accurate for n beyond the double exponent range.
double log_binom_half(std::uint64_t n, std::uint64_t k) {
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::lgamma(nd + 1) - std::lgamma(kd + 1) - std::lgamma(nd - kd + 1) - nd * std::log(2.0);
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> labels, std::span<const Label> preds) {
  check_lengths(labels.size(), preds.size());
  if (labels.empty()) throw Error(ErrorCode::DegenerateInput, "cannot build a confusion matrix from no samples");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool truth = labels[i] == Label::Event;
    const bool pred = preds[i] == Label::Event;
    if (truth && pred) ++m.tp;
    else if (!truth && !pred) ++m.tn;
    else if (pred) ++m.fp;
    else ++m.fn;
  }
  return m;
}

double mcc(const ConfusionMatrix& m) {
  if (m.total() == 0) throw Error(ErrorCode::DegenerateInput, "MCC of an empty confusion matrix");
  __extension__ using i128 = __int128;
  __extension__ using u128 = unsigned __int128;
  const i128 num = static_cast<i128>(m.tp) * m.tn - static_cast<i128>(m.fp) * m.fn;
  const u128 a = static_cast<u128>(m.tp) + m.fp, b = static_cast<u128>(m.tp) + m.fn;
  const u128 c = static_cast<u128>(m.tn) + m.fp, d = static_cast<u128>(m.tn) + m.fn;
  if (a == 0 || b == 0 || c == 0 || d == 0) return 0.0;
  // Counts below 2^32 keep each pairwise product exact; the final product is
  // split into two square roots so nothing overflows 128 bits. Pairing a with
  // d and b with c leaves both products unchanged when the classes swap or
  // every prediction is inverted, so those identities hold bit for bit.
  const long double den = std::sqrt(static_cast<long double>(a * d)) * std::sqrt(static_cast<long double>(b * c));
  const long double r = static_cast<long double>(num) / den;
  return static_cast<double>(std::clamp(r, -1.0L, 1.0L));
}

double accuracy(const ConfusionMatrix& m) {
  if (m.total() == 0) throw Error(ErrorCode::DegenerateInput, "accuracy of an empty confusion matrix");
  return static_cast<double>(m.tp + m.tn) / static_cast<double>(m.total());
}

double mcnemar_exact_p(std::uint64_t b, std::uint64_t c) {
  const std::uint64_t n = b + c;
  if (n == 0) return 1.0;
  const std::uint64_t k = std::min(b, c);
  long double tail = 0.0L;
  if (n <= 16000) {
    // Exact recurrence from C(n, 0) * 2^-n, which long double represents.
    long double term = std::ldexp(1.0L, -static_cast<int>(n));
    for (std::uint64_t i = 0; i <= k; ++i) {
      tail += term;
      term = term * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    }
  } else {
    const double peak = log_binom_half(n, k);
    long double acc = 0.0L;
    for (std::uint64_t i = 0; i <= k; ++i) acc += std::exp(static_cast<long double>(log_binom_half(n, i) - peak));
    tail = std::exp(static_cast<long double>(peak)) * acc;
  }
  return static_cast<double>(std::min(1.0L, 2.0L * tail));
}

McNemarResult mcnemar_test(std::span<const Label> labels, std::span<const Label> preds_a,
                           std::span<const Label> preds_b, double level) {
  check_lengths(labels.size(), preds_a.size());
  check_lengths(labels.size(), preds_b.size());
  McNemarResult r;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool a_ok = preds_a[i] == labels[i];
    const bool b_ok = preds_b[i] == labels[i];
    if (a_ok && !b_ok) ++r.b;
    if (!a_ok && b_ok) ++r.c;
  }
  r.p_value = mcnemar_exact_p(r.b, r.c);
  r.significant = r.p_value <= level;
  return r;
}

EvalReport make_report(std::string source, const ConfusionMatrix& m) {
  EvalReport r;
  r.source = std::move(source);
  r.matrix = m;
  r.mcc = mcc(m);
  r.accuracy = accuracy(m);
  r.n_pos = m.tp + m.fn;
  r.n_neg = m.tn + m.fp;
  r.noise_ratio = r.n_pos == 0 ? 0.0 : static_cast<double>(r.n_neg) / static_cast<double>(r.n_pos);
  return r;
}

}  // namespace seisdetect
