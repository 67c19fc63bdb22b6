#pragma once

#include <span>
#include <vector>

// The canonical 22-feature time-series catalog. Every function expects a
// z-scored series (see zscore) of at least 10 finite samples; the registry
// performs that normalisation and validation before calling in.
namespace seisdetect::catch22 {

// Sample (n - 1) standard deviation, matching the catalog's internal use.
std::vector<double> zscore(std::span<const double> y);

double histogram_mode_5(std::span<const double> z);             // C1
double histogram_mode_10(std::span<const double> z);            // C2
double acf_first_1e_crossing(std::span<const double> z);        // C3
double acf_first_min(std::span<const double> z);                // C4
double histogram_ami_tau2(std::span<const double> z);           // C5
double time_reversibility(std::span<const double> z);           // C6
double high_fluctuation_fraction(std::span<const double> z);    // C7
double longest_stretch_above_mean(std::span<const double> z);   // C8
double transition_matrix_diag_cov(std::span<const double> z);   // C9
double periodicity_wang(std::span<const double> z);             // C10
double embedding_distance_expfit(std::span<const double> z);    // C11
double first_min_gaussian_ami(std::span<const double> z);       // C12
double whitening_timescale_ratio(std::span<const double> z);    // C13
double outlier_timing_positive(std::span<const double> z);      // C14
double outlier_timing_negative(std::span<const double> z);      // C15
double welch_low_frequency_power(std::span<const double> z);    // C16
double longest_decreasing_stretch(std::span<const double> z);   // C17
double motif_pair_entropy(std::span<const double> z);           // C18
double rescaled_range_scaling(std::span<const double> z);       // C19
double detrended_fluctuation_scaling(std::span<const double> z);// C20
double welch_centroid(std::span<const double> z);               // C21
double mean3_forecast_error(std::span<const double> z);         // C22

// Least-squares cubic spline with breaks at 0, floor(n/2) - 1 and n - 1,
// evaluated at every sample index. Exposed for testing.
std::vector<double> spline_trend(std::span<const double> y);

}  // namespace seisdetect::catch22
