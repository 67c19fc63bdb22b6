#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "seisdetect/eval.hpp"

namespace testutil {

// Exact-integer numerator and factor product, square root at 50 digits.
inline double mcc_oracle(const seisdetect::ConfusionMatrix& m) {
  using boost::multiprecision::cpp_int;
  using Dec = boost::multiprecision::cpp_dec_float_50;
  const cpp_int tp = m.tp, tn = m.tn, fp = m.fp, fn = m.fn;
  const cpp_int num = tp * tn - fp * fn;
  const cpp_int den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (den == 0) return 0.0;
  const Dec value = Dec(num) / sqrt(Dec(den));
  return value.convert_to<double>();
}

// Two-sided exact binomial p-value min(1, 2 * P(X <= min(b, c))), X ~ Bin(b + c, 1/2).
inline double mcnemar_oracle(unsigned b, unsigned c) {
  using boost::multiprecision::cpp_int;
  using Dec = boost::multiprecision::cpp_dec_float_50;
  const unsigned n = b + c;
  if (n == 0) return 1.0;
  const unsigned k = b < c ? b : c;
  cpp_int tail = 0, binom = 1;
  for (unsigned i = 0; i <= k; ++i) {
    if (i > 0) binom = binom * (n - i + 1) / i;
    tail += binom;
  }
  const Dec p = Dec(2) * Dec(tail) / Dec(cpp_int(1) << n);
  return p > 1 ? 1.0 : p.convert_to<double>();
}

}  // namespace testutil
