#include "seisdetect/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seisdetect/error.hpp"

namespace seisdetect::dsp {
namespace {

using cplx = std::complex<double>;

std::vector<cplx> prototype_poles(int order) {
  std::vector<cplx> poles;
  poles.reserve(order);
  for (int k = 0; k < order; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + order + 1) / (2.0 * order);
    poles.push_back(std::polar(1.0, theta));
  }
  return poles;
}

cplx bilinear(cplx s, double fs2) { return (fs2 + s) / (fs2 - s); }

// Groups digital poles into conjugate pairs (or pairs of real poles). A
// leftover single real pole is returned as a pair with a zero second root.
std::vector<std::pair<cplx, cplx>> pair_poles(std::vector<cplx> poles) {
  constexpr double kImagTol = 1e-12;
  std::vector<std::pair<cplx, cplx>> pairs;
  std::vector<double> reals;
  for (const auto& p : poles) {
    if (std::abs(p.imag()) <= kImagTol * std::max(1.0, std::abs(p))) {
      reals.push_back(p.real());
    } else if (p.imag() > 0) {
      pairs.emplace_back(p, std::conj(p));
    }
  }
  std::sort(reals.begin(), reals.end());
  for (std::size_t i = 0; i < reals.size(); i += 2) {
    const cplx second = i + 1 < reals.size() ? cplx(reals[i + 1]) : cplx(0.0);
    pairs.emplace_back(cplx(reals[i]), second);
  }
  return pairs;
}

Biquad section_from_poles(const std::pair<cplx, cplx>& p, double b0, double b1, double b2) {
  Biquad s;
  s.b0 = b0;
  s.b1 = b1;
  s.b2 = b2;
  // (1 - p1 z^-1)(1 - p2 z^-1)
  s.a1 = -(p.first + p.second).real();
  s.a2 = (p.first * p.second).real();
  return s;
}

void normalise_gain(SosFilter& sos, double freq_hz, double sample_rate) {
  const double g = std::abs(frequency_response(sos, freq_hz, sample_rate));
  const double per_section = std::pow(g, 1.0 / static_cast<double>(sos.size()));
  for (auto& s : sos) {
    s.b0 /= per_section;
    s.b1 /= per_section;
    s.b2 /= per_section;
  }
}

}  // namespace

SosFilter butterworth_bandpass(int order, double low_hz, double high_hz, double sample_rate) {
  if (order < 1) throw Error(ErrorCode::InvalidConfig, "filter_order must be >= 1");
  if (!(sample_rate > 0.0)) throw Error(ErrorCode::InvalidConfig, "sample_rate must be > 0");
  const double nyquist = sample_rate / 2.0;
  if (!(low_hz > 0.0 && low_hz < high_hz && high_hz < nyquist)) {
    throw Error(ErrorCode::InvalidBand, "band edges must satisfy 0 < low < high < Nyquist (" +
                                            std::to_string(nyquist) + " Hz)");
  }
  const double fs2 = 2.0 * sample_rate;
  const double w1 = fs2 * std::tan(std::numbers::pi * low_hz / sample_rate);
  const double w2 = fs2 * std::tan(std::numbers::pi * high_hz / sample_rate);
  const double bw = w2 - w1;
  const double w0sq = w1 * w2;

  std::vector<cplx> digital;
  for (const auto& p : prototype_poles(order)) {
    const cplx half = p * bw / 2.0;
    const cplx root = std::sqrt(half * half - w0sq);
    digital.push_back(bilinear(half + root, fs2));
    digital.push_back(bilinear(half - root, fs2));
  }
  SosFilter sos;
  for (const auto& pair : pair_poles(std::move(digital))) {
    // One zero at z = 1 and one at z = -1 per section.
    sos.push_back(section_from_poles(pair, 1.0, 0.0, -1.0));
  }
  const double center = sample_rate / std::numbers::pi * std::atan(std::sqrt(w0sq) / fs2);
  normalise_gain(sos, center, sample_rate);
  return sos;
}

SosFilter butterworth_lowpass(int order, double cutoff_hz, double sample_rate) {
  if (order < 1) throw Error(ErrorCode::InvalidConfig, "filter_order must be >= 1");
  if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0)) {
    throw Error(ErrorCode::InvalidBand, "low-pass cutoff must lie in (0, Nyquist)");
  }
  const double fs2 = 2.0 * sample_rate;
  const double wc = fs2 * std::tan(std::numbers::pi * cutoff_hz / sample_rate);
  std::vector<cplx> digital;
  for (const auto& p : prototype_poles(order)) digital.push_back(bilinear(wc * p, fs2));
  SosFilter sos;
  for (const auto& pair : pair_poles(std::move(digital))) {
    if (pair.second == cplx(0.0)) {
      sos.push_back(section_from_poles(pair, 1.0, 1.0, 0.0));
    } else {
      sos.push_back(section_from_poles(pair, 1.0, 2.0, 1.0));
    }
  }
  normalise_gain(sos, 0.0, sample_rate);
  return sos;
}

std::complex<double> frequency_response(const SosFilter& sos, double freq_hz, double sample_rate) {
  const cplx zinv = std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / sample_rate);
  cplx h(1.0);
  for (const auto& s : sos) {
    h *= (s.b0 + s.b1 * zinv + s.b2 * zinv * zinv) / (1.0 + s.a1 * zinv + s.a2 * zinv * zinv);
  }
  return h;
}

std::size_t settling_length(const SosFilter& sos) {
  double rmax = 0.0;
  for (const auto& s : sos) {
    // Roots of z^2 + a1 z + a2.
    const cplx disc = std::sqrt(cplx(s.a1 * s.a1 - 4.0 * s.a2));
    rmax = std::max({rmax, std::abs((-s.a1 + disc) / 2.0), std::abs((-s.a1 - disc) / 2.0)});
  }
  if (rmax <= 0.0) return 1;
  if (rmax >= 1.0) return 0;  // unstable design; caller sees no padding
  return static_cast<std::size_t>(std::ceil(std::log(1e-6) / std::log(rmax)));
}

std::vector<double> filter(const SosFilter& sos, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  for (const auto& s : sos) {
    double z1 = 0.0, z2 = 0.0;
    for (auto& v : y) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
  return y;
}

std::vector<double> filtfilt(const SosFilter& sos, std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  const std::size_t pad = n > 1 ? std::min(settling_length(sos), n - 1) : 0;

  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x.front() - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x.back() - x[n - 1 - i]);

  auto fwd = filter(sos, ext);
  std::reverse(fwd.begin(), fwd.end());
  auto bwd = filter(sos, fwd);
  std::reverse(bwd.begin(), bwd.end());
  return {bwd.begin() + static_cast<std::ptrdiff_t>(pad),
          bwd.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

}  // namespace seisdetect::dsp
