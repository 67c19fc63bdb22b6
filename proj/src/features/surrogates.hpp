#pragma once

#include <span>

// Stand-ins for the four inputs of the prior detection model, whose exact
// definitions are not published. Frequencies are in Hz.
namespace seisdetect::surrogate {

double trace_rms(std::span<const double> x, double fs);
double dominant_frequency(std::span<const double> x, double fs);
double spectral_centroid(std::span<const double> x, double fs);
// Largest short-term/long-term average energy ratio with 0.5 s and 5 s
// trailing windows. Throws DegenerateSeries when the trace is shorter than
// the long window.
double sta_lta_max(std::span<const double> x, double fs);

}  // namespace seisdetect::surrogate
