#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace seisdetect::detail {

// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

// Real-to-complex DFT of x zero-padded to nfft; returns nfft/2 + 1 bins.
std::vector<std::complex<double>> rfft(std::span<const double> x, std::size_t nfft);

// Normalised autocorrelation r[k]/r[0] of the mean-removed series, via a
// zero-padded FFT of length 2 * next_pow2(n). Returned length equals that FFT
// length; lags >= n are zero up to rounding.
std::vector<double> autocorrelation(std::span<const double> x);

}  // namespace seisdetect::detail
