#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace seisdetect::dsp {

// Normalised second-order section, a0 == 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

using SosFilter = std::vector<Biquad>;

// Digital Butterworth designs via the bilinear transform with pre-warped band
// edges. A band-pass of prototype order N has N sections (2N poles).
SosFilter butterworth_bandpass(int order, double low_hz, double high_hz, double sample_rate);
SosFilter butterworth_lowpass(int order, double cutoff_hz, double sample_rate);

std::complex<double> frequency_response(const SosFilter& sos, double freq_hz, double sample_rate);

// Samples until the slowest pole decays below 1e-6 of its initial amplitude.
std::size_t settling_length(const SosFilter& sos);

// Single causal pass, zero initial state.
std::vector<double> filter(const SosFilter& sos, std::span<const double> x);

// Forward-backward pass with odd reflective padding of one settling length at
// each end (clamped to the signal length minus one).
std::vector<double> filtfilt(const SosFilter& sos, std::span<const double> x);

}  // namespace seisdetect::dsp
