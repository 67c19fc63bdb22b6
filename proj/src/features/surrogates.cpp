#include "surrogates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fft.hpp"
#include "seisdetect/error.hpp"

namespace seisdetect::surrogate {
namespace {

std::vector<double> centered(std::span<const double> x) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [m](double v) { return v - m; });
  return out;
}

// One-sided periodogram of the demeaned trace at its native length.
std::vector<double> periodogram(std::span<const double> x) {
  const auto spec = detail::rfft(centered(x), x.size());
  std::vector<double> p(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) p[i] = std::norm(spec[i]);
  return p;
}

}  // namespace

double trace_rms(std::span<const double> x, double) {
  const auto c = centered(x);
  const double ss = std::inner_product(c.begin(), c.end(), c.begin(), 0.0);
  return std::sqrt(ss / static_cast<double>(c.size()));
}

double dominant_frequency(std::span<const double> x, double fs) {
  const auto p = periodogram(x);
  const auto peak = std::max_element(p.begin() + 1, p.end()) - p.begin();
  return static_cast<double>(peak) * fs / static_cast<double>(x.size());
}

double spectral_centroid(std::span<const double> x, double fs) {
  const auto p = periodogram(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double f = static_cast<double>(i) * fs / static_cast<double>(x.size());
    num += f * p[i];
    den += p[i];
  }
  return num / den;
}

double sta_lta_max(std::span<const double> x, double fs) {
  const auto sta_len = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(0.5 * fs)));
  const auto lta_len = std::max<std::size_t>(sta_len + 1, static_cast<std::size_t>(std::lround(5.0 * fs)));
  if (x.size() < lta_len) {
    throw Error(ErrorCode::DegenerateSeries, "STA/LTA needs at least " + std::to_string(lta_len) + " samples, got " +
                                                 std::to_string(x.size()));
  }
  const auto c = centered(x);
  // Prefix sums of energy make each window an O(1) difference.
  std::vector<double> cum(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) cum[i + 1] = cum[i] + c[i] * c[i];
  double best = 0.0;
  for (std::size_t end = lta_len; end <= c.size(); ++end) {
    const double lta = (cum[end] - cum[end - lta_len]) / static_cast<double>(lta_len);
    const double sta = (cum[end] - cum[end - sta_len]) / static_cast<double>(sta_len);
    if (lta > 0) best = std::max(best, sta / lta);
  }
  return best;
}

}  // namespace seisdetect::surrogate
