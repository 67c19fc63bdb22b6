#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "seisdetect/bench.hpp"
#include "seisdetect/error.hpp"
#include "seisdetect/seeds.hpp"

namespace seisdetect {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::string numbered(const char* pattern, int a, int b = 0) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// AR(1) background with a random offset and drift, scaled to unit RMS before
// the offset and drift are added, then multiplied by a station gain.
std::vector<double> colored_noise(Rng& rng, std::size_t n, double fs, double& rms_out) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double phi = uniform(rng, 0.6, 0.95);
  std::vector<double> x(n);
  double state = gauss(rng) / std::sqrt(1.0 - phi * phi);
  for (std::size_t i = 0; i < n; ++i) {
    state = phi * state + gauss(rng);
    x[i] = state;
  }
  // Low-frequency swell well below the analysis band.
  const double swell_f = uniform(rng, 0.1, 1.0);
  const double swell_a = uniform(rng, 0.0, 2.0);
  const double swell_p = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] += swell_a * std::sin(2.0 * std::numbers::pi * swell_f * static_cast<double>(i) / fs + swell_p);
  }
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double scale = std::sqrt(ss / static_cast<double>(n));
  const double gain = std::exp(std::normal_distribution<double>(0.0, 0.5)(rng));
  const double offset = uniform(rng, -5.0, 5.0);
  const double drift = uniform(rng, -1.0, 1.0) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = gain * ((x[i] - mean) / scale + offset + drift * static_cast<double>(i));
  }
  rms_out = gain;
  return x;
}

void add_wavelet(Rng& rng, std::vector<double>& x, double fs, double onset_frac, double freq, double decay_s,
                 double amplitude) {
  const double rise_s = 0.05;
  const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const auto start = static_cast<std::size_t>(onset_frac * static_cast<double>(x.size()));
  std::vector<double> w(x.size() - start);
  double peak = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double t = static_cast<double>(i) / fs;
    w[i] = (1.0 - std::exp(-t / rise_s)) * std::exp(-t / decay_s) * std::sin(2.0 * std::numbers::pi * freq * t + phase);
    peak = std::max(peak, std::fabs(w[i]));
  }
  if (peak == 0.0) return;
  for (std::size_t i = 0; i < w.size(); ++i) x[start + i] += amplitude * w[i] / peak;
}

std::vector<double> gaussian_row(Rng& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = gauss(rng);
  return v;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (n_events < 1) throw Error(ErrorCode::InvalidConfig, "synth.n_events must be >= 1");
  if (traces_per_event_min < 1 || traces_per_event_max < traces_per_event_min) {
    throw Error(ErrorCode::InvalidConfig, "synth.traces_per_event must be a range [min, max] with 1 <= min <= max");
  }
  if (n_noise < 0) throw Error(ErrorCode::InvalidConfig, "synth.n_noise must be >= 0");
  if (!(fs > 0.0) || !std::isfinite(fs)) throw Error(ErrorCode::InvalidConfig, "synth.fs must be positive");
  if (fs / 2.0 <= 25.0) throw Error(ErrorCode::InvalidConfig, "synth.fs must exceed 50 Hz to hold 5-25 Hz arrivals");
  if (window_len < 64) throw Error(ErrorCode::InvalidConfig, "synth.window_len must be >= 64 samples");
  if (!(snr_min > 0.0 && snr_max >= snr_min)) {
    throw Error(ErrorCode::InvalidConfig, "synth.snr_range must satisfy 0 < min <= max");
  }
}

std::vector<WaveformRecord> generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  std::vector<WaveformRecord> out;
  for (int e = 0; e < spec.n_events; ++e) {
    Rng rng(derive_seed(spec.seed, "synth.event", static_cast<std::uint64_t>(e)));
    const std::string event_id = numbered("ev%04d", e + 1);
    const double magnitude = 0.2 + std::exponential_distribution<double>(1.0 / 0.85)(rng);
    const int n_traces = std::uniform_int_distribution<int>(spec.traces_per_event_min, spec.traces_per_event_max)(rng);
    const double origin = uniform(rng, 0.25, 0.45);
    const double base_freq = uniform(rng, 6.0, 24.0);
    const double decay = uniform(rng, 0.3, 1.5);
    for (int t = 0; t < n_traces; ++t) {
      WaveformRecord r;
      r.trace_id = numbered("ev%04d_tr%03d", e + 1, t + 1);
      r.event_id = event_id;
      r.station = numbered("ST%03d", t + 1);
      r.channel = "HHZ";
      r.sample_rate = spec.fs;
      r.label = Label::Event;
      r.magnitude = magnitude;
      double rms = 1.0;
      r.samples = colored_noise(rng, spec.window_len, spec.fs, rms);
      const double snr = std::exp(uniform(rng, std::log(spec.snr_min), std::log(spec.snr_max)));
      const double onset = origin + uniform(rng, 0.0, 0.1);
      const double freq = std::clamp(base_freq * uniform(rng, 0.8, 1.2), 5.0, 25.0);
      add_wavelet(rng, r.samples, spec.fs, onset, freq, decay * uniform(rng, 0.8, 1.25), snr * rms);
      out.push_back(std::move(r));
    }
  }
  for (int k = 0; k < spec.n_noise; ++k) {
    Rng rng(derive_seed(spec.seed, "synth.noise", static_cast<std::uint64_t>(k)));
    WaveformRecord r;
    r.trace_id = numbered("nz%06d", k + 1);
    r.station = numbered("ST%03d", 1 + static_cast<int>(rng() % 60));
    r.channel = "HHZ";
    r.sample_rate = spec.fs;
    r.label = Label::Noise;
    double rms = 1.0;
    r.samples = colored_noise(rng, spec.window_len, spec.fs, rms);
    out.push_back(std::move(r));
  }
  return out;
}

PlantedCorpus generate_planted(const PlantedSpec& spec) {
  if (spec.n_informative < 1 || spec.n_noise_features < 0) {
    throw Error(ErrorCode::InvalidConfig, "planted corpus needs >= 1 informative and >= 0 noise features");
  }
  const int p = spec.n_informative + spec.n_noise_features;
  std::vector<std::string> codes;
  for (int j = 0; j < p; ++j) codes.push_back(numbered("F%02d", j + 1));

  Rng layout(derive_seed(spec.seed, "planted.layout"));
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), layout);
  // Signed shift per column: alternating signs on the informative columns.
  std::vector<double> shift(static_cast<std::size_t>(p), 0.0);
  PlantedCorpus c;
  for (int k = 0; k < spec.n_informative; ++k) {
    shift[static_cast<std::size_t>(order[k])] = (k % 2 == 0 ? 1.0 : -1.0) * spec.effect;
  }
  for (int j = 0; j < p; ++j) {
    if (shift[static_cast<std::size_t>(j)] != 0.0) c.informative.push_back(codes[static_cast<std::size_t>(j)]);
  }

  auto make = [&](const char* stage, const char* prefix, std::size_t n_event, std::size_t n_noise, DataRole role) {
    Rng rng(derive_seed(spec.seed, stage));
    FeatureMatrix m;
    m.role = role;
    m.codes = codes;
    const std::size_t n = n_event + n_noise;
    for (std::size_t i = 0; i < n; ++i) {
      const bool event = i < n_event;
      auto row = gaussian_row(rng, p);
      if (event) {
        for (int j = 0; j < p; ++j) row[static_cast<std::size_t>(j)] += shift[static_cast<std::size_t>(j)];
      }
      char id[48];
      std::snprintf(id, sizeof id, "%s%06zu", prefix, i + 1);
      m.trace_ids.emplace_back(id);
      m.labels.push_back(event ? Label::Event : Label::Noise);
      m.values.insert(m.values.end(), row.begin(), row.end());
    }
    return m;
  };
  auto events_in = [&](std::size_t n) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n) / (1.0 + spec.base_ratio)));
  };
  const std::size_t tr_ev = events_in(spec.n_train);
  const std::size_t va_ev = events_in(spec.n_validation);
  c.train = make("planted.train", "tr", tr_ev, spec.n_train - tr_ev, DataRole::Train);
  c.validation = make("planted.validation", "va", va_ev, spec.n_validation - va_ev, DataRole::Validation);
  c.test_positive = make("planted.test", "te", spec.n_test_positive, 0, DataRole::Test);
  c.noise_pool = make("planted.pool", "po", 0, spec.n_pool, DataRole::Pool);
  return c;
}

}  // namespace seisdetect
