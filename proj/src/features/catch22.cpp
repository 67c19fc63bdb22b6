#include "seisdetect/catch22.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <queue>
#include <string_view>

#include "fft.hpp"

namespace seisdetect::catch22 {
namespace {

using Series = std::span<const double>;

double mean(Series y) { return std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size()); }

double stddev(Series y) {
  const double m = mean(y);
  double ss = 0.0;
  for (double v : y) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(y.size() - 1));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2] + v[n / 2 - 1]) / 2.0;
}

double pearson(Series x, Series y) {
  const double mx = mean(x), my = mean(y);
  double num = 0.0, dx = 0.0, dy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    dx += (x[i] - mx) * (x[i] - mx);
    dy += (y[i] - my) * (y[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

double autocorr_lag(Series y, std::size_t lag) {
  return pearson(y.first(y.size() - lag), y.subspan(lag));
}

// Ordinary least squares of y on x; a singular design yields a flat zero fit.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit linreg(Series x, Series y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sx2 = 0.0, sxy = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sx2 += x[i] * x[i];
    sxy += x[i] * y[i];
    sy += y[i];
  }
  const double denom = n * sx2 - sx * sx;
  if (denom == 0.0) return {};
  return {(n * sxy - sx * sy) / denom, (sy * sx2 - sx * sxy) / denom};
}

// Index of the first non-positive autocorrelation, capped at max_lag.
std::size_t first_zero_crossing(Series y, std::size_t max_lag) {
  const auto acf = detail::autocorrelation(y);
  std::size_t k = 0;
  while (acf[k] > 0 && k < max_lag) ++k;
  return k;
}

struct Histogram {
  std::vector<int> counts;
  std::vector<double> edges;
};

// Equal-width bins between min and max; the maximum lands in the last bin.
Histogram histcounts(Series y, int n_bins) {
  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double lo = *lo_it, hi = *hi_it;
  const double step = (hi - lo) / n_bins;
  Histogram h{std::vector<int>(n_bins, 0), std::vector<double>(n_bins + 1)};
  for (double v : y) {
    int bin = static_cast<int>((v - lo) / step);
    bin = std::clamp(bin, 0, n_bins - 1);
    ++h.counts[bin];
  }
  for (int i = 0; i <= n_bins; ++i) h.edges[i] = i * step + lo;
  return h;
}

double histogram_mode(Series y, int n_bins) {
  const auto h = histcounts(y, n_bins);
  double max_count = 0.0;
  int n_max = 1;
  double out = 0.0;
  for (int i = 0; i < n_bins; ++i) {
    const double centre = (h.edges[i] + h.edges[i + 1]) * 0.5;
    if (h.counts[i] > max_count) {
      max_count = h.counts[i];
      n_max = 1;
      out = centre;
    } else if (h.counts[i] == max_count) {
      ++n_max;
      out += centre;
    }
  }
  return out / n_max;
}

// Linear-interpolated quantile on the sorted sample with half-sample offsets.
double quantile(std::vector<double> sorted_copy, double q) {
  std::sort(sorted_copy.begin(), sorted_copy.end());
  const auto n = static_cast<double>(sorted_copy.size());
  const double edge = 0.5 / n;
  if (q < edge) return sorted_copy.front();
  if (q > 1.0 - edge) return sorted_copy.back();
  const double idx = n * q - 0.5;
  const auto left = static_cast<std::size_t>(std::floor(idx));
  const auto right = static_cast<std::size_t>(std::ceil(idx));
  return sorted_copy[left] + (idx - static_cast<double>(left)) * (sorted_copy[right] - sorted_copy[left]) /
                                 static_cast<double>(right - left);
}

// Maps each sample to a 1-based equiprobable symbol.
std::vector<int> coarse_grain_quantile(Series y, int n_groups) {
  std::vector<double> values(y.begin(), y.end());
  std::vector<double> thresholds(n_groups + 1);
  const double step = 1.0 / n_groups;
  double level = 0.0;
  for (int i = 0; i <= n_groups; ++i) {
    thresholds[i] = quantile(values, level);
    level += step;
  }
  thresholds[0] -= 1.0;
  std::vector<int> labels(y.size(), 0);
  for (int g = 0; g < n_groups; ++g) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] > thresholds[g] && y[j] <= thresholds[g + 1]) labels[j] = g + 1;
    }
  }
  return labels;
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0) h += v * std::log(v);
  }
  return -h;
}

double outlier_timing(Series z, double sign) {
  constexpr double kIncrement = 0.01;
  const std::size_t n = z.size();
  std::vector<double> work(n);
  int n_nonneg = 0;
  bool constant = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] != z[0]) constant = false;
    work[i] = sign * z[i];
    if (work[i] >= 0) ++n_nonneg;
  }
  if (constant) return 0.0;
  const double max_val = *std::max_element(work.begin(), work.end());
  if (max_val < kIncrement) return 0.0;
  const int n_thresh = static_cast<int>(max_val / kIncrement + 1);

  // Highest threshold index each sample clears, using the same j * inc
  // products as the threshold comparisons themselves.
  std::vector<std::vector<std::size_t>> bucket(n_thresh);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = work[i];
    if (v < 0) continue;
    int j = std::min(static_cast<int>(v / kIncrement), n_thresh - 1);
    while (j + 1 < n_thresh && v >= (j + 1) * kIncrement) ++j;
    while (j >= 0 && v < j * kIncrement) --j;
    if (j >= 0) bucket[j].push_back(i + 1);
  }

  std::vector<int> above(n_thresh);
  int running = 0;
  for (int j = n_thresh - 1; j >= 0; --j) {
    running += static_cast<int>(bucket[j].size());
    above[j] = running;
  }
  int last_dense = 0;
  for (int j = 0; j < n_thresh; ++j) {
    if ((above[j] - 1) * 100.0 / n_nonneg > 2) last_dense = j;
  }
  int first_single = n_thresh - 1;
  for (int j = n_thresh - 1; j >= 0; --j) {
    if (above[j] - 1 == 0) first_single = j;
  }
  const int trim = std::min(last_dense, first_single);

  // Running median of the exceedance positions, sweeping thresholds downward.
  std::priority_queue<std::size_t> lower;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> upper;
  std::vector<double> median_offset(trim + 1);
  const double half = static_cast<double>(n) / 2.0;
  for (int j = n_thresh - 1; j >= 0; --j) {
    for (std::size_t pos : bucket[j]) {
      if (lower.empty() || pos <= lower.top()) {
        lower.push(pos);
      } else {
        upper.push(pos);
      }
      if (lower.size() > upper.size() + 1) {
        upper.push(lower.top());
        lower.pop();
      } else if (upper.size() > lower.size()) {
        lower.push(upper.top());
        upper.pop();
      }
    }
    if (j > trim) continue;
    const double med = lower.size() > upper.size()
                           ? static_cast<double>(lower.top())
                           : (static_cast<double>(upper.top()) + static_cast<double>(lower.top())) / 2.0;
    median_offset[j] = med / half - 1.0;
  }
  return median(std::move(median_offset));
}

struct WelchSpectrum {
  std::vector<double> omega;
  std::vector<double> power;
};

// Single rectangular window spanning the series, zero-padded to a power of
// two; one-sided density in angular frequency (unit sample rate).
WelchSpectrum welch_rect(Series z) {
  const std::size_t n = z.size();
  const std::size_t nfft = detail::next_pow2(n);
  const double m = mean(z);
  std::vector<double> centered(n);
  std::transform(z.begin(), z.end(), centered.begin(), [m](double v) { return v - m; });
  const auto spec = detail::rfft(centered, nfft);
  const std::size_t n_out = nfft / 2 + 1;
  WelchSpectrum s{std::vector<double>(n_out), std::vector<double>(n_out)};
  const double scale = static_cast<double>(n);
  for (std::size_t i = 0; i < n_out; ++i) {
    double p = std::norm(spec[i]) / scale;
    if (i > 0 && i < n_out - 1) p *= 2.0;
    s.omega[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(nfft);
    s.power[i] = p / (2.0 * std::numbers::pi);
  }
  return s;
}

enum class Fluctuation { RescaledRange, Detrended };

double fluctuation_scaling(Series z, int lag, Fluctuation how) {
  constexpr int kSteps = 50;
  constexpr int kMinPoints = 6;
  const int n = static_cast<int>(z.size());
  const double log_lo = std::log(5.0);
  const double log_hi = std::log(static_cast<double>(n / 2));
  const double log_step = (log_hi - log_lo) / (kSteps - 1);

  std::vector<int> scales;
  for (int i = 0; i < kSteps; ++i) scales.push_back(static_cast<int>(std::round(std::exp(log_lo + i * log_step))));
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
  const int n_scales = static_cast<int>(scales.size());
  if (n_scales < 12) return 0.0;

  const int n_cs = n / lag;
  std::vector<double> profile(n_cs);
  profile[0] = z[0];
  for (int i = 0; i + 1 < n_cs; ++i) profile[i + 1] = profile[i] + z[(i + 1) * lag];

  std::vector<double> log_scale(n_scales), log_fluct(n_scales);
  for (int s = 0; s < n_scales; ++s) {
    const int t = scales[s];
    const int n_windows = n_cs / t;
    double sx = 0.0, sx2 = 0.0;
    for (int k = 1; k <= t; ++k) {
      sx += k;
      sx2 += static_cast<double>(k) * k;
    }
    const double denom = t * sx2 - sx * sx;
    double acc = 0.0;
    for (int w = 0; w < n_windows; ++w) {
      const double* seg = profile.data() + static_cast<std::size_t>(w) * t;
      double sxy = 0.0, sy = 0.0;
      for (int k = 0; k < t; ++k) {
        sxy += (k + 1) * seg[k];
        sy += seg[k];
      }
      double slope = 0.0, icpt = 0.0;
      if (denom != 0.0) {
        slope = (t * sxy - sx * sy) / denom;
        icpt = (sy * sx2 - sx * sxy) / denom;
      }
      if (how == Fluctuation::Detrended) {
        for (int k = 0; k < t; ++k) {
          const double r = seg[k] - (slope * (k + 1) + icpt);
          acc += r * r;
        }
      } else {
        double hi = -HUGE_VAL, lo = HUGE_VAL;
        for (int k = 0; k < t; ++k) {
          const double r = seg[k] - (slope * (k + 1) + icpt);
          hi = std::max(hi, r);
          lo = std::min(lo, r);
        }
        acc += (hi - lo) * (hi - lo);
      }
    }
    const double f = how == Fluctuation::Detrended ? std::sqrt(acc / (static_cast<double>(n_windows) * t))
                                                   : std::sqrt(acc / n_windows);
    log_scale[s] = std::log(static_cast<double>(t));
    log_fluct[s] = std::log(f);
  }

  // Two-segment fit: choose the breakpoint minimising the summed residual norms.
  auto residual_norm = [&](int start, int count, const LineFit& fit) {
    double ss = 0.0;
    for (int j = start; j < start + count; ++j) {
      const double r = log_scale[j] * fit.slope + fit.intercept - log_fluct[j];
      ss += r * r;
    }
    return std::sqrt(ss);
  };
  const Series xs(log_scale), ys(log_fluct);
  std::vector<double> sserr;
  for (int i = kMinPoints; i < n_scales - kMinPoints + 1; ++i) {
    const auto left = linreg(xs.first(i), ys.first(i));
    const auto right = linreg(xs.subspan(i - 1), ys.subspan(i - 1));
    sserr.push_back(residual_norm(0, i, left) + residual_norm(i - 1, n_scales - i + 1, right));
  }
  const auto best = std::min_element(sserr.begin(), sserr.end()) - sserr.begin();
  const double first_min = static_cast<double>(best + kMinPoints - 1);
  return (first_min + 1.0) / n_scales;
}

// Longest run ending at a marker sample, measured as the index gap between
// consecutive markers; the final sample always closes a run.
double longest_gap(const std::vector<int>& bits, int marker) {
  const int m = static_cast<int>(bits.size());
  int longest = 0;
  int last = 0;
  for (int i = 0; i < m; ++i) {
    if (bits[i] == marker || i == m - 1) {
      longest = std::max(longest, i - last);
      last = i;
    }
  }
  return longest;
}

}  // namespace

std::vector<double> zscore(std::span<const double> y) {
  const double m = mean(y);
  const double sd = stddev(y);
  std::vector<double> out(y.size());
  std::transform(y.begin(), y.end(), out.begin(), [&](double v) { return (v - m) / sd; });
  return out;
}

double histogram_mode_5(Series z) { return histogram_mode(z, 5); }
double histogram_mode_10(Series z) { return histogram_mode(z, 10); }

double acf_first_1e_crossing(Series z) {
  const auto acf = detail::autocorrelation(z);
  const double threshold = 1.0 / std::exp(1.0);
  const std::size_t n = z.size();
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (acf[i + 1] < threshold) {
      return static_cast<double>(i) + (threshold - acf[i]) / (acf[i + 1] - acf[i]);
    }
  }
  return static_cast<double>(n);
}

double acf_first_min(Series z) {
  const auto acf = detail::autocorrelation(z);
  const std::size_t n = z.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (acf[i] < acf[i - 1] && acf[i] < acf[i + 1]) return static_cast<double>(i);
  }
  return static_cast<double>(n);
}

double histogram_ami_tau2(Series z) {
  constexpr std::size_t kLag = 2;
  constexpr int kBins = 5;
  const auto [lo_it, hi_it] = std::minmax_element(z.begin(), z.end());
  const double step = (*hi_it - *lo_it + 0.2) / kBins;
  std::array<double, kBins + 1> edges{};
  for (int i = 0; i <= kBins; ++i) edges[i] = *lo_it + step * i - 0.1;
  auto bin_of = [&](double v) {
    for (int j = 0; j <= kBins; ++j) {
      if (v < edges[j]) return j;
    }
    return 0;
  };

  std::array<std::array<double, kBins>, kBins> joint{};
  double total = 0.0;
  for (std::size_t i = 0; i + kLag < z.size(); ++i) {
    const int a = bin_of(z[i]);
    const int b = bin_of(z[i + kLag]);
    if (a >= 1 && b >= 1) {
      joint[a - 1][b - 1] += 1.0;
      total += 1.0;
    }
  }
  std::array<double, kBins> pa{}, pb{};
  for (int a = 0; a < kBins; ++a) {
    for (int b = 0; b < kBins; ++b) {
      joint[a][b] /= total;
      pa[a] += joint[a][b];
      pb[b] += joint[a][b];
    }
  }
  double ami = 0.0;
  for (int a = 0; a < kBins; ++a) {
    for (int b = 0; b < kBins; ++b) {
      if (joint[a][b] > 0) ami += joint[a][b] * std::log(joint[a][b] / (pa[a] * pb[b]));
    }
  }
  return ami;
}

double time_reversibility(Series z) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) acc += std::pow(z[i + 1] - z[i], 3);
  return acc / static_cast<double>(z.size() - 1);
}

double high_fluctuation_fraction(Series z) {
  double count = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    if (std::fabs(z[i + 1] - z[i]) * 1000 > 40) count += 1.0;
  }
  return count / static_cast<double>(z.size() - 1);
}

double longest_stretch_above_mean(Series z) {
  const double m = mean(z);
  std::vector<int> bits(z.size() - 1);
  for (std::size_t i = 0; i + 1 < z.size(); ++i) bits[i] = (z[i] - m <= 0) ? 0 : 1;
  return longest_gap(bits, 0);
}

double longest_decreasing_stretch(Series z) {
  std::vector<int> bits(z.size() - 1);
  for (std::size_t i = 0; i + 1 < z.size(); ++i) bits[i] = (z[i + 1] - z[i] < 0) ? 0 : 1;
  return longest_gap(bits, 1);
}

double transition_matrix_diag_cov(Series z) {
  constexpr int kGroups = 3;
  const std::size_t lag = first_zero_crossing(z, z.size());
  const std::size_t n_down = (z.size() - 1) / lag + 1;
  std::vector<double> down(n_down);
  for (std::size_t i = 0; i < n_down; ++i) down[i] = z[i * lag];
  const auto symbols = coarse_grain_quantile(down, kGroups);

  std::array<std::array<double, kGroups>, kGroups> trans{};
  for (std::size_t j = 0; j + 1 < n_down; ++j) trans[symbols[j] - 1][symbols[j + 1] - 1] += 1.0;
  for (auto& row : trans) {
    for (auto& v : row) v /= static_cast<double>(n_down - 1);
  }
  // Sum of the variances of the transition-matrix columns.
  double total = 0.0;
  for (int c = 0; c < kGroups; ++c) {
    std::array<double, kGroups> col{};
    for (int r = 0; r < kGroups; ++r) col[r] = trans[r][c];
    const double m = (col[0] + col[1] + col[2]) / kGroups;
    double ss = 0.0;
    for (double v : col) ss += (v - m) * (v - m);
    total += ss / (kGroups - 1);
  }
  return total;
}

std::vector<double> spline_trend(Series y) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const double knot = std::floor(static_cast<double>(n) / 2.0) - 1.0;
  const double scale = static_cast<double>(n - 1);
  const double t_knot = knot / scale;
  // Truncated-power basis on a unit-scaled abscissa spans the same C2 cubic
  // spline space as the B-spline basis.
  Eigen::MatrixXd design(n, 5);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / scale;
    const double tail = std::max(t - t_knot, 0.0);
    design(i, 0) = 1.0;
    design(i, 1) = t;
    design(i, 2) = t * t;
    design(i, 3) = t * t * t;
    design(i, 4) = tail * tail * tail;
  }
  const Eigen::Map<const Eigen::VectorXd> target(y.data(), n);
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(target);
  const Eigen::VectorXd fit = design * coef;
  return {fit.data(), fit.data() + n};
}

double periodicity_wang(Series z) {
  constexpr double kThreshold = 0.01;
  const std::size_t n = z.size();
  const auto trend = spline_trend(z);
  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) resid[i] = z[i] - trend[i];

  const auto max_lag = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / 3.0));
  // acf[k] holds the autocovariance at lag k + 1, filled lazily.
  std::vector<double> acf;
  acf.reserve(max_lag);
  auto ensure = [&](std::size_t idx) {
    while (acf.size() <= idx) {
      const std::size_t lag = acf.size() + 1;
      double acc = 0.0;
      for (std::size_t i = 0; i + lag < n; ++i) acc += resid[i] * resid[i + lag];
      acf.push_back(acc / static_cast<double>(n - lag));
    }
  };

  bool have_trough = false;
  double last_trough = 0.0;
  for (std::size_t i = 1; i + 2 <= max_lag; ++i) {
    ensure(i + 1);
    const double slope_in = acf[i] - acf[i - 1];
    const double slope_out = acf[i + 1] - acf[i];
    if (slope_in < 0 && slope_out > 0) {
      have_trough = true;
      last_trough = acf[i];
    } else if (slope_in > 0 && slope_out < 0) {
      if (!have_trough) continue;
      if (acf[i] - last_trough < kThreshold) continue;
      if (acf[i] < 0) continue;
      return static_cast<double>(i);
    }
  }
  return 0.0;
}

double embedding_distance_expfit(Series z) {
  const std::size_t n = z.size();
  std::size_t lag = first_zero_crossing(z, n);
  if (static_cast<double>(lag) > static_cast<double>(n) / 10.0) {
    lag = static_cast<std::size_t>(std::floor(static_cast<double>(n) / 10.0));
  }
  const std::size_t m = n - lag - 1;
  std::vector<double> dist(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = z[i + 1] - z[i];
    const double b = z[i + lag] - z[i + lag + 1];
    dist[i] = std::sqrt(a * a + b * b);
  }
  const double scale = mean(dist);
  const double sd = stddev(dist);
  if (sd < 0.001) return 0.0;
  const auto [lo, hi] = std::minmax_element(dist.begin(), dist.end());
  const int n_bins =
      static_cast<int>(std::ceil((*hi - *lo) / (3.5 * sd / std::pow(static_cast<double>(m), 1.0 / 3.0))));
  if (n_bins == 0) return 0.0;
  const auto h = histcounts(dist, n_bins);
  double acc = 0.0;
  for (int i = 0; i < n_bins; ++i) {
    const double density = static_cast<double>(h.counts[i]) / static_cast<double>(m);
    double expected = std::exp(-(h.edges[i] + h.edges[i + 1]) * 0.5 / scale) / scale;
    if (expected < 0) expected = 0;
    acc += std::fabs(density - expected);
  }
  return acc / n_bins;
}

double first_min_gaussian_ami(Series z) {
  const int n = static_cast<int>(z.size());
  const int max_lag = std::min(40, (n + 1) / 2);
  if (max_lag < 3) return max_lag;
  auto ami = [&](int lag) {
    const double r = autocorr_lag(z, static_cast<std::size_t>(lag));
    return -0.5 * std::log(1.0 - r * r);
  };
  double prev = ami(1);
  double curr = ami(2);
  for (int i = 1; i < max_lag - 1; ++i) {
    const double next = ami(i + 2);
    if (curr < prev && curr < next) return i;
    prev = curr;
    curr = next;
  }
  return max_lag;
}

double whitening_timescale_ratio(Series z) {
  const std::size_t n = z.size() - 1;
  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) resid[i] = z[i + 1] - z[i];
  const auto resid_scale = static_cast<double>(first_zero_crossing(resid, n));
  const auto series_scale = static_cast<double>(first_zero_crossing(z, z.size()));
  return resid_scale / series_scale;
}

double outlier_timing_positive(Series z) { return outlier_timing(z, 1.0); }
double outlier_timing_negative(Series z) { return outlier_timing(z, -1.0); }

double welch_low_frequency_power(Series z) {
  const auto s = welch_rect(z);
  const double d_omega = s.omega[1] - s.omega[0];
  double area = 0.0;
  for (std::size_t i = 0; i < s.power.size() / 5; ++i) area += s.power[i];
  return area * d_omega;
}

double welch_centroid(Series z) {
  const auto s = welch_rect(z);
  std::vector<double> cumulative(s.power.size());
  std::partial_sum(s.power.begin(), s.power.end(), cumulative.begin());
  const double half = cumulative.back() * 0.5;
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    if (cumulative[i] > half) return s.omega[i];
  }
  return 0.0;
}

double motif_pair_entropy(Series z) {
  constexpr int kAlphabet = 3;
  const auto symbols = coarse_grain_quantile(z, kAlphabet);
  std::array<std::array<double, kAlphabet>, kAlphabet> pairs{};
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) pairs[symbols[i] - 1][symbols[i + 1] - 1] += 1.0;
  double h = 0.0;
  for (auto& row : pairs) {
    for (auto& v : row) v /= static_cast<double>(z.size()) - 1.0;
    h += entropy(row);
  }
  return h;
}

double rescaled_range_scaling(Series z) { return fluctuation_scaling(z, 1, Fluctuation::RescaledRange); }
double detrended_fluctuation_scaling(Series z) { return fluctuation_scaling(z, 2, Fluctuation::Detrended); }

double mean3_forecast_error(Series z) {
  constexpr std::size_t kWindow = 3;
  const std::size_t n = z.size() - kWindow;
  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) {
    double forecast = 0.0;
    for (std::size_t j = 0; j < kWindow; ++j) forecast += z[i + j];
    resid[i] = z[i + kWindow] - forecast / static_cast<double>(kWindow);
  }
  return stddev(resid);
}

}  // namespace seisdetect::catch22
