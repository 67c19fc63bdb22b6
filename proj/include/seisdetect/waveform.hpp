#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seisdetect {

enum class Label { Event, Noise };

std::string_view to_string(Label label);
Label parse_label(std::string_view text);

/// One seismogram trace plus the provenance needed for event-wise splitting.
///
/// Event records carry an `event_id`; noise records never do. Magnitude is
/// optional and only meaningful for event records.
struct WaveformRecord {
  std::string trace_id;
  std::optional<std::string> event_id;
  std::string station;
  std::string channel;
  double sample_rate = 0.0;
  std::vector<double> samples;
  Label label = Label::Noise;
  std::optional<double> magnitude;

  /// Throws Error(InvalidConfig) naming the offending field.
  void validate() const;
};

struct PreprocessConfig {
  double band_low_hz = 5.0;
  double band_high_hz = 25.0;
  int downsample_factor = 2;
  int filter_order = 4;
  // Post-preprocessing trace length; records are center-cropped to it and
  // rejected when shorter. Zero keeps the native length.
  std::size_t window_len = 0;

  /// Checks the band against the Nyquist frequency of `sample_rate`.
  void validate(double sample_rate) const;
};

std::vector<double> demean(std::span<const double> samples);
std::vector<double> detrend_linear(std::span<const double> samples);
std::vector<double> bandpass(std::span<const double> samples, double sample_rate,
                             const PreprocessConfig& cfg);

// Standalone decimation. Applies a zero-phase anti-alias low-pass first when
// factor > 1; output[i] = filtered[i * factor].
std::vector<double> downsample(std::span<const double> samples, int factor, double sample_rate = 1.0);

// Keeps every factor-th sample with no filtering.
std::vector<double> decimate_plain(std::span<const double> samples, int factor);

std::vector<double> center_crop(std::span<const double> samples, std::size_t length);

// detrend -> demean -> bandpass -> downsample -> optional crop. Decimation is
// plain when the band already sits below the post-decimation Nyquist.
WaveformRecord preprocess(const WaveformRecord& record, const PreprocessConfig& cfg);

// Batch kernels: the serial version is the reference the OpenMP version is
// tested against.
std::vector<WaveformRecord> preprocess_all_serial(const std::vector<WaveformRecord>& records,
                                                  const PreprocessConfig& cfg);
std::vector<WaveformRecord> preprocess_all(const std::vector<WaveformRecord>& records,
                                           const PreprocessConfig& cfg);

}  // namespace seisdetect
