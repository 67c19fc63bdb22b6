#include <algorithm>
#include <cmath>
#include <string>

#include "seisdetect/catch22.hpp"
#include "seisdetect/error.hpp"
#include "seisdetect/features.hpp"
#include "surrogates.hpp"

namespace seisdetect {
namespace {

using Kernel = double (*)(std::span<const double>);

FeatureInfo catalog_entry(std::string code, std::string name, std::string description, Kernel kernel) {
  FeatureInfo info;
  info.code = std::move(code);
  info.name = std::move(name);
  info.description = std::move(description);
  info.min_length = 10;
  info.affine_invariant = true;
  info.compute = [kernel](std::span<const double> x, double) {
    const auto z = catch22::zscore(x);
    return kernel(z);
  };
  return info;
}

FeatureRegistry build_canonical() {
  FeatureRegistry r;
  r.add(catalog_entry("C1", "DN_HistogramMode_5", "Mode of a 5-bin histogram of the z-scored series",
                      catch22::histogram_mode_5));
  r.add(catalog_entry("C2", "DN_HistogramMode_10", "Mode of a 10-bin histogram of the z-scored series",
                      catch22::histogram_mode_10));
  r.add(catalog_entry("C3", "CO_f1ecac", "First 1/e crossing of the autocorrelation function",
                      catch22::acf_first_1e_crossing));
  r.add(catalog_entry("C4", "CO_FirstMin_ac", "First minimum of the autocorrelation function",
                      catch22::acf_first_min));
  r.add(catalog_entry("C5", "CO_HistogramAMI_even_2_5", "Automutual information at lag 2 using 5 equal bins",
                      catch22::histogram_ami_tau2));
  r.add(catalog_entry("C6", "CO_trev_1_num", "Time-reversibility statistic: mean cubed successive difference",
                      catch22::time_reversibility));
  r.add(catalog_entry("C7", "MD_hrv_classic_pnn40", "Fraction of successive differences exceeding 0.04 sigma",
                      catch22::high_fluctuation_fraction));
  r.add(catalog_entry("C8", "SB_BinaryStats_mean_longstretch1", "Longest stretch of values above the mean",
                      catch22::longest_stretch_above_mean));
  r.add(catalog_entry("C9", "SB_TransitionMatrix_3ac_sumdiagcov",
                      "Column-variance sum of the 3-symbol transition matrix at the first ACF zero",
                      catch22::transition_matrix_diag_cov));
  r.add(catalog_entry("C10", "PD_PeriodicityWang_th0_01", "Periodicity estimate from spline-detrended ACF peaks",
                      catch22::periodicity_wang));
  r.add(catalog_entry("C11", "CO_Embed2_Dist_tau_d_expfit_meandiff",
                      "Exponential-fit misfit of 2-d embedding successive distances",
                      catch22::embedding_distance_expfit));
  r.add(catalog_entry("C12", "IN_AutoMutualInfoStats_40_gaussian_fmmi",
                      "First minimum of the Gaussian automutual information function",
                      catch22::first_min_gaussian_ami));
  r.add(catalog_entry("C13", "FC_LocalSimple_mean1_tauresrat",
                      "Ratio of ACF zero crossings of one-step-mean residuals and the series",
                      catch22::whitening_timescale_ratio));
  r.add(catalog_entry("C14", "DN_OutlierInclude_p_001_mdrmd", "Timing of positive-outlier exceedances",
                      catch22::outlier_timing_positive));
  r.add(catalog_entry("C15", "DN_OutlierInclude_n_001_mdrmd", "Timing of negative-outlier exceedances",
                      catch22::outlier_timing_negative));
  r.add(catalog_entry("C16", "SP_Summaries_welch_rect_area_5_1", "Power in the lowest fifth of frequencies",
                      catch22::welch_low_frequency_power));
  r.add(catalog_entry("C17", "SB_BinaryStats_diff_longstretch0", "Longest stretch of decreasing values",
                      catch22::longest_decreasing_stretch));
  r.add(catalog_entry("C18", "SB_MotifThree_quantile_hh", "Entropy of successive pairs in a 3-letter symbolization",
                      catch22::motif_pair_entropy));
  r.add(catalog_entry("C19", "SC_FluctAnal_2_rsrangefit_50_1_logi_prop_r1",
                      "Rescaled-range fluctuation analysis scaling breakpoint",
                      catch22::rescaled_range_scaling));
  r.add(catalog_entry("C20", "SC_FluctAnal_2_dfa_50_1_2_logi_prop_r1",
                      "Detrended fluctuation analysis scaling breakpoint",
                      catch22::detrended_fluctuation_scaling));
  r.add(catalog_entry("C21", "SP_Summaries_welch_rect_centroid", "Centroid of the power spectrum",
                      catch22::welch_centroid));
  r.add(catalog_entry("C22", "FC_LocalSimple_mean3_stderr", "Error of a rolling 3-sample mean forecast",
                      catch22::mean3_forecast_error));
  return r;
}

FeatureRegistry build_surrogates() {
  FeatureRegistry r;
  r.add({"W1", "trace_rms", "Stand-in: root-mean-square amplitude of the demeaned trace", 10, false,
         surrogate::trace_rms});
  r.add({"W2", "dominant_frequency", "Stand-in: periodogram peak frequency in Hz", 10, true,
         surrogate::dominant_frequency});
  r.add({"W3", "spectral_centroid", "Stand-in: power-weighted mean frequency in Hz", 10, true,
         surrogate::spectral_centroid});
  r.add({"W4", "sta_lta_max", "Stand-in: maximum 0.5 s / 5 s trailing energy ratio", 10, true,
         surrogate::sta_lta_max});
  return r;
}

}  // namespace

void FeatureRegistry::add(FeatureInfo info) {
  if (info.code.empty()) throw Error(ErrorCode::InvalidConfig, "feature code must be non-empty");
  if (!info.compute) throw Error(ErrorCode::InvalidConfig, "feature " + info.code + " has no kernel");
  if (index_.count(info.code) != 0) throw Error(ErrorCode::DuplicateFeature, "feature code " + info.code);
  index_.emplace(info.code, entries_.size());
  entries_.push_back(std::move(info));
}

void FeatureRegistry::merge(const FeatureRegistry& other) {
  for (const auto& e : other.entries_) add(e);
}

bool FeatureRegistry::contains(std::string_view code) const { return index_.count(std::string(code)) != 0; }

const FeatureInfo& FeatureRegistry::at(std::string_view code) const {
  const auto it = index_.find(std::string(code));
  if (it == index_.end()) throw Error(ErrorCode::UnknownFeature, "'" + std::string(code) + "'");
  return entries_[it->second];
}

std::vector<std::string> FeatureRegistry::list() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.code);
  return out;
}

const FeatureRegistry& canonical_registry() {
  static const FeatureRegistry r = build_canonical();
  return r;
}

const FeatureRegistry& surrogate_registry() {
  static const FeatureRegistry r = build_surrogates();
  return r;
}

const FeatureRegistry& reproduction_registry() {
  static const FeatureRegistry r = [] {
    FeatureRegistry all = surrogate_registry();
    all.merge(canonical_registry());
    return all;
  }();
  return r;
}

std::vector<std::string> list_features(const FeatureRegistry& registry) { return registry.list(); }

double extract_feature(std::span<const double> samples, const FeatureRegistry& registry, std::string_view code,
                       double sample_rate) {
  const auto& info = registry.at(code);
  if (samples.size() < info.min_length) {
    throw Error(ErrorCode::DegenerateSeries, info.code + ": series of length " + std::to_string(samples.size()) +
                                                 " is shorter than " + std::to_string(info.min_length));
  }
  if (!std::all_of(samples.begin(), samples.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::DegenerateSeries, info.code + ": series contains non-finite samples");
  }
  if (std::all_of(samples.begin(), samples.end(), [&](double v) { return v == samples[0]; })) {
    throw Error(ErrorCode::DegenerateSeries, info.code + ": series is constant");
  }
  const double value = info.compute(samples, sample_rate);
  if (!std::isfinite(value)) throw Error(ErrorCode::DegenerateSeries, info.code + ": non-finite result");
  return value;
}

}  // namespace seisdetect
