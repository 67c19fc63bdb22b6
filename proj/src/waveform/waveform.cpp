#include "seisdetect/waveform.hpp"

#include <cmath>
#include <exception>
#include <numeric>

#include "seisdetect/error.hpp"
#include "seisdetect/filter.hpp"

namespace seisdetect {

std::string_view to_string(Label label) { return label == Label::Event ? "event" : "noise"; }

Label parse_label(std::string_view text) {
  if (text == "event") return Label::Event;
  if (text == "noise") return Label::Noise;
  throw Error(ErrorCode::ParseError, "label must be 'event' or 'noise', got '" + std::string(text) + "'");
}

void WaveformRecord::validate() const {
  auto fail = [this](const std::string& what) {
    throw Error(ErrorCode::InvalidConfig, "record '" + trace_id + "': " + what);
  };
  if (trace_id.empty()) throw Error(ErrorCode::InvalidConfig, "record: trace_id must be non-empty");
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) fail("sample_rate must be > 0");
  if (samples.empty()) fail("samples must be non-empty");
  for (double v : samples) {
    if (!std::isfinite(v)) fail("samples must be finite");
  }
  if (label == Label::Event && !event_id) fail("event_id required when label = event");
  if (label == Label::Noise && event_id) fail("event_id must be absent when label = noise");
  if (magnitude && !std::isfinite(*magnitude)) fail("magnitude must be finite");
}

void PreprocessConfig::validate(double sample_rate) const {
  if (downsample_factor < 1) throw Error(ErrorCode::InvalidFactor, "downsample_factor must be >= 1");
  if (filter_order < 1) throw Error(ErrorCode::InvalidConfig, "filter_order must be >= 1");
  if (!(band_low_hz > 0.0 && band_low_hz < band_high_hz && band_high_hz < sample_rate / 2.0)) {
    throw Error(ErrorCode::InvalidBand, "require 0 < band_low_hz < band_high_hz < sample_rate/2 (got " +
                                            std::to_string(band_low_hz) + ", " + std::to_string(band_high_hz) +
                                            " at " + std::to_string(sample_rate) + " Hz)");
  }
}

std::vector<double> demean(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::DegenerateInput, "demean of an empty sequence");
  const double n = static_cast<double>(samples.size());
  double m = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  // Second pass removes the rounding residue of the first mean.
  double residual = 0.0;
  for (double v : samples) residual += v - m;
  m += residual / n;
  std::vector<double> out(samples.begin(), samples.end());
  for (auto& v : out) v -= m;
  return out;
}

std::vector<double> detrend_linear(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw Error(ErrorCode::DegenerateInput, "detrend needs at least 2 samples");
  // Centered abscissa makes slope and intercept decouple.
  const double xc = (static_cast<double>(n) - 1.0) / 2.0;
  double sxx = 0.0, sxy = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) - xc;
    sxx += x * x;
    sxy += x * samples[i];
    sy += samples[i];
  }
  const double slope = sxy / sxx;
  const double intercept = sy / static_cast<double>(n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = samples[i] - (intercept + slope * (static_cast<double>(i) - xc));
  }
  return out;
}

std::vector<double> bandpass(std::span<const double> samples, double sample_rate, const PreprocessConfig& cfg) {
  cfg.validate(sample_rate);
  const auto sos = dsp::butterworth_bandpass(cfg.filter_order, cfg.band_low_hz, cfg.band_high_hz, sample_rate);
  return dsp::filtfilt(sos, samples);
}

std::vector<double> decimate_plain(std::span<const double> samples, int factor) {
  if (factor < 1) throw Error(ErrorCode::InvalidFactor, "downsample factor must be >= 1");
  const auto k = static_cast<std::size_t>(factor);
  std::vector<double> out;
  out.reserve((samples.size() + k - 1) / k);
  for (std::size_t i = 0; i < samples.size(); i += k) out.push_back(samples[i]);
  return out;
}

std::vector<double> downsample(std::span<const double> samples, int factor, double sample_rate) {
  if (factor < 1) throw Error(ErrorCode::InvalidFactor, "downsample factor must be >= 1");
  if (factor == 1) return {samples.begin(), samples.end()};
  // Order-8 Butterworth at 80% of the post-decimation Nyquist.
  const double cutoff = 0.8 * sample_rate / (2.0 * factor);
  const auto sos = dsp::butterworth_lowpass(8, cutoff, sample_rate);
  return decimate_plain(dsp::filtfilt(sos, samples), factor);
}

std::vector<double> center_crop(std::span<const double> samples, std::size_t length) {
  if (samples.size() < length) {
    throw Error(ErrorCode::DegenerateInput, "trace of " + std::to_string(samples.size()) +
                                                " samples is shorter than window_len " + std::to_string(length));
  }
  const std::size_t start = (samples.size() - length) / 2;
  return {samples.begin() + static_cast<std::ptrdiff_t>(start),
          samples.begin() + static_cast<std::ptrdiff_t>(start + length)};
}

WaveformRecord preprocess(const WaveformRecord& record, const PreprocessConfig& cfg) {
  record.validate();
  cfg.validate(record.sample_rate);
  WaveformRecord out = record;
  auto x = detrend_linear(record.samples);
  x = demean(x);
  x = bandpass(x, record.sample_rate, cfg);
  const double new_nyquist = record.sample_rate / (2.0 * cfg.downsample_factor);
  if (cfg.band_high_hz < new_nyquist) {
    x = decimate_plain(x, cfg.downsample_factor);
  } else {
    x = downsample(x, cfg.downsample_factor, record.sample_rate);
  }
  if (cfg.window_len > 0) x = center_crop(x, cfg.window_len);
  out.samples = std::move(x);
  out.sample_rate = record.sample_rate / cfg.downsample_factor;
  return out;
}

std::vector<WaveformRecord> preprocess_all_serial(const std::vector<WaveformRecord>& records,
                                                  const PreprocessConfig& cfg) {
  std::vector<WaveformRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(preprocess(r, cfg));
  return out;
}

std::vector<WaveformRecord> preprocess_all(const std::vector<WaveformRecord>& records,
                                           const PreprocessConfig& cfg) {
  std::vector<WaveformRecord> out(records.size());
  std::vector<std::exception_ptr> errors(records.size());
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = preprocess(records[i], cfg);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  // Rethrow the first failure in input order so the outcome is deterministic.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace seisdetect
