#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "seisdetect/error.hpp"
#include "seisdetect/filter.hpp"
#include "seisdetect/waveform.hpp"
#include "seisdetect/waveform_io.hpp"
#include "test_util.hpp"

using namespace seisdetect;

namespace {

double rms(const std::vector<double>& x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0) / static_cast<double>(x.size()));
}

double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

template <typename F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

WaveformRecord make_record(std::vector<double> samples, double fs = 200.0) {
  WaveformRecord r;
  r.trace_id = "t1";
  r.event_id = "e1";
  r.station = "ST1";
  r.channel = "HHZ";
  r.sample_rate = fs;
  r.samples = std::move(samples);
  r.label = Label::Event;
  r.magnitude = 1.0;
  return r;
}

}  // namespace

TEST(Demean, ConstantMapsToZero) {
  EXPECT_EQ(demean(std::vector<double>{5, 5, 5, 5}), (std::vector<double>{0, 0, 0, 0}));
}

TEST(Demean, SymmetricAroundMean) {
  EXPECT_EQ(demean(std::vector<double>{1, 2, 3}), (std::vector<double>{-1, 0, 1}));
}

TEST(Demean, GaussianDrawHasZeroMean) {
  auto x = testutil::gaussian(1000, 11);
  for (auto& v : x) v += 3.0;
  const auto y = demean(x);
  EXPECT_LT(std::fabs(mean(y)), 1e-12 * rms(x));
}

TEST(Demean, EmptyIsDegenerate) {
  expect_code(ErrorCode::DegenerateInput, [] { demean(std::vector<double>{}); });
}

TEST(Detrend, PerfectLineMapsToZero) {
  for (double v : detrend_linear(std::vector<double>{0, 1, 2, 3})) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Detrend, ConstantMapsToZero) {
  for (double v : detrend_linear(std::vector<double>(17, 4.25))) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Detrend, LinePlusSineLeavesSineResidual) {
  const std::size_t n = 1000;
  const double fs = 200.0;
  const auto s = testutil::sine(n, 10.0, fs);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 3.0 - 0.02 * static_cast<double>(i) + s[i];
  // Independent oracle: closed-form least-squares line of the sine alone in
  // long double; the residual of line + sine must equal sine minus that line.
  long double st = 0, stt = 0, sy = 0, sty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double t = i;
    st += t;
    stt += t * t;
    sy += s[i];
    sty += t * s[i];
  }
  const long double nn = n;
  const long double slope = (nn * sty - st * sy) / (nn * stt - st * st);
  const long double icpt = (sy - slope * st) / nn;
  const auto y = detrend_linear(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = static_cast<double>(s[i] - (icpt + slope * static_cast<long double>(i)));
    EXPECT_NEAR(y[i], expected, 1e-9);
  }
}

TEST(Detrend, ResidualHasNoLinearComponent) {
  auto x = testutil::gaussian(777, 3);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += 0.5 * static_cast<double>(i) + 10.0;
  const auto y = detrend_linear(x);
  double st = 0, stt = 0, sy = 0, sty = 0;
  const double n = static_cast<double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    st += i;
    stt += static_cast<double>(i) * i;
    sy += y[i];
    sty += i * y[i];
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  const double icpt = (sy - slope * st) / n;
  EXPECT_LT(std::fabs(slope), 1e-10 * rms(x));
  EXPECT_LT(std::fabs(icpt), 1e-10 * rms(x));
}

TEST(Detrend, TooShortIsDegenerate) {
  expect_code(ErrorCode::DegenerateInput, [] { detrend_linear(std::vector<double>{1.0}); });
}

TEST(Bandpass, PassbandSinePreserved) {
  PreprocessConfig cfg;
  const auto y = bandpass(testutil::sine(4000, 15.0, 200.0), 200.0, cfg);
  EXPECT_NEAR(testutil::amplitude_at(y, 15.0, 200.0), 1.0, 0.05);
}

TEST(Bandpass, StopbandSineAttenuated) {
  PreprocessConfig cfg;
  const auto y = bandpass(testutil::sine(4000, 1.0, 200.0), 200.0, cfg);
  EXPECT_LT(testutil::amplitude_at(y, 1.0, 200.0), 0.05);
  double peak = 0.0;
  for (std::size_t i = 1000; i < 3000; ++i) peak = std::max(peak, std::fabs(y[i]));
  EXPECT_LT(peak, 0.05);
}

TEST(Bandpass, ZeroInZeroOut) {
  PreprocessConfig cfg;
  for (double v : bandpass(std::vector<double>(500, 0.0), 200.0, cfg)) EXPECT_EQ(v, 0.0);
}

TEST(Bandpass, BandAboveNyquistRejected) {
  PreprocessConfig cfg;
  cfg.band_high_hz = 120.0;
  expect_code(ErrorCode::InvalidBand, [&] { bandpass(testutil::gaussian(100, 1), 200.0, cfg); });
  cfg.band_high_hz = 25.0;
  cfg.band_low_hz = 30.0;
  expect_code(ErrorCode::InvalidBand, [&] { bandpass(testutil::gaussian(100, 1), 200.0, cfg); });
}

TEST(Bandpass, IsLinear) {
  PreprocessConfig cfg;
  const auto x = testutil::gaussian(1500, 5);
  const auto y = testutil::gaussian(1500, 6);
  const double a = 2.5, b = -0.75;
  std::vector<double> combo(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) combo[i] = a * x[i] + b * y[i];
  const auto fx = bandpass(x, 200.0, cfg), fy = bandpass(y, 200.0, cfg), fc = bandpass(combo, 200.0, cfg);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(fc[i], a * fx[i] + b * fy[i], 1e-9);
}

TEST(Bandpass, ZeroPhase) {
  PreprocessConfig cfg;
  // Band-limited input: a sum of in-band tones.
  auto x = testutil::sine(3000, 9.0, 200.0);
  const auto x2 = testutil::sine(3000, 17.0, 200.0, 0.6, 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += x2[i];
  const auto y = bandpass(x, 200.0, cfg);
  int best_lag = 0;
  double best = -1e300;
  for (int lag = -20; lag <= 20; ++lag) {
    double acc = 0.0;
    for (int i = 500; i < 2500; ++i) acc += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i + lag)];
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  EXPECT_EQ(best_lag, 0);
}

TEST(Linearity, DemeanAndDetrend) {
  const auto x = testutil::gaussian(300, 8);
  const auto y = testutil::gaussian(300, 9);
  const double a = -1.5, b = 3.0;
  std::vector<double> combo(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) combo[i] = a * x[i] + b * y[i];
  for (auto f : {&demean, &detrend_linear}) {
    const auto fx = f(x), fy = f(y), fc = f(combo);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(fc[i], a * fx[i] + b * fy[i], 1e-9);
  }
}

TEST(Idempotence, DemeanAndDetrend) {
  auto x = testutil::gaussian(400, 10);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += 0.1 * static_cast<double>(i) + 7.0;
  const auto d1 = demean(x), d2 = demean(d1);
  const auto t1 = detrend_linear(x), t2 = detrend_linear(t1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(d1[i], d2[i], 1e-10);
    EXPECT_NEAR(t1[i], t2[i], 1e-10);
  }
}

TEST(Downsample, FactorOneIsIdentity) {
  const auto x = testutil::gaussian(10, 1);
  EXPECT_EQ(downsample(x, 1), x);
}

TEST(Downsample, FactorTwoHalvesLength) { EXPECT_EQ(downsample(testutil::gaussian(10, 2), 2).size(), 5u); }

TEST(Downsample, ZeroFactorRejected) {
  expect_code(ErrorCode::InvalidFactor, [] { downsample(testutil::gaussian(10, 2), 0); });
}

TEST(Downsample, LengthContract) {
  for (std::size_t n = 1; n <= 64; ++n) {
    const auto x = testutil::gaussian(n, n);
    for (int k = 1; k <= 7; ++k) {
      const std::size_t expected = (n + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k);
      EXPECT_EQ(downsample(x, k, 200.0).size(), expected) << n << " " << k;
      EXPECT_EQ(decimate_plain(x, k).size(), expected);
    }
  }
}

TEST(Downsample, BandLimitedContentPreserved) {
  PreprocessConfig cfg;
  const auto x = bandpass(testutil::sine(4000, 15.0, 200.0), 200.0, cfg);
  const double before = testutil::amplitude_at(x, 15.0, 200.0);
  const auto y = downsample(x, 2, 200.0);
  const double after = testutil::amplitude_at(y, 15.0, 100.0);
  EXPECT_NEAR(after / before, 1.0, 0.05);
}

TEST(Downsample, AntiAliasRemovesContentAboveNewNyquist) {
  // 70 Hz at fs = 200 would alias to 30 Hz after plain decimation by 2.
  const auto x = testutil::sine(4000, 70.0, 200.0);
  EXPECT_GT(testutil::amplitude_at(decimate_plain(x, 2), 30.0, 100.0), 0.9);
  EXPECT_LT(testutil::amplitude_at(downsample(x, 2, 200.0), 30.0, 100.0), 0.05);
}

TEST(Preprocess, ConstantRecordBecomesZero) {
  const auto out = preprocess(make_record(std::vector<double>(800, 12.5)), PreprocessConfig{});
  for (double v : out.samples) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Preprocess, SampleRateDivided) {
  const auto out = preprocess(make_record(testutil::gaussian(800, 4)), PreprocessConfig{});
  EXPECT_DOUBLE_EQ(out.sample_rate, 100.0);
  EXPECT_EQ(out.samples.size(), 400u);
  EXPECT_EQ(out.trace_id, "t1");
  EXPECT_EQ(out.event_id, std::optional<std::string>("e1"));
  EXPECT_EQ(out.magnitude, std::optional<double>(1.0));
}

TEST(Preprocess, EqualsManualChain) {
  auto x = testutil::gaussian(1200, 21);
  const auto s = testutil::sine(1200, 12.0, 200.0, 4.0);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += s[i] + 0.01 * static_cast<double>(i) + 3.0;
  PreprocessConfig cfg;
  const auto out = preprocess(make_record(x), cfg);
  const auto manual = decimate_plain(bandpass(demean(detrend_linear(x)), 200.0, cfg), 2);
  ASSERT_EQ(out.samples.size(), manual.size());
  for (std::size_t i = 0; i < manual.size(); ++i) EXPECT_EQ(out.samples[i], manual[i]);
}

TEST(Preprocess, WindowCropAndRejection) {
  PreprocessConfig cfg;
  cfg.window_len = 300;
  EXPECT_EQ(preprocess(make_record(testutil::gaussian(800, 4)), cfg).samples.size(), 300u);
  cfg.window_len = 500;
  expect_code(ErrorCode::DegenerateInput, [&] { preprocess(make_record(testutil::gaussian(800, 4)), cfg); });
}

TEST(Preprocess, ParallelMatchesSerial) {
  std::vector<WaveformRecord> recs;
  for (int i = 0; i < 24; ++i) {
    auto r = make_record(testutil::gaussian(600 + 10 * static_cast<std::size_t>(i), static_cast<std::uint64_t>(i)));
    r.trace_id = "t" + std::to_string(i);
    recs.push_back(r);
  }
  PreprocessConfig cfg;
  const auto a = preprocess_all_serial(recs, cfg);
  const auto b = preprocess_all(recs, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].samples, b[i].samples);
}

TEST(Filter, ButterworthMagnitudeAtEdges) {
  const auto sos = dsp::butterworth_bandpass(4, 5.0, 25.0, 200.0);
  // Single pass: -3 dB at both edges.
  EXPECT_NEAR(std::abs(dsp::frequency_response(sos, 5.0, 200.0)), std::sqrt(0.5), 1e-6);
  EXPECT_NEAR(std::abs(dsp::frequency_response(sos, 25.0, 200.0)), std::sqrt(0.5), 1e-6);
}

TEST(WaveformRecord, InvariantsEnforced) {
  auto r = make_record({1, 2, 3});
  r.validate();
  r.event_id.reset();
  expect_code(ErrorCode::InvalidConfig, [&] { r.validate(); });
  r = make_record({1, 2, 3});
  r.label = Label::Noise;
  expect_code(ErrorCode::InvalidConfig, [&] { r.validate(); });
  r = make_record({1, 2, 3}, 0.0);
  expect_code(ErrorCode::InvalidConfig, [&] { r.validate(); });
  r = make_record({});
  expect_code(ErrorCode::InvalidConfig, [&] { r.validate(); });
}

TEST(WaveformIo, RoundTripIsLossless) {
  WaveformFile f;
  f.role = DataRole::Validation;
  auto a = make_record({0.1, -2.0000000000000004, 1e-300, 3.141592653589793});
  auto b = make_record({1, 2, 3});
  b.trace_id = "n1";
  b.label = Label::Noise;
  b.event_id.reset();
  b.magnitude.reset();
  f.records = {a, b};
  std::stringstream ss;
  write_waveforms(ss, f);
  const auto back = read_waveforms(ss);
  EXPECT_EQ(back.role, DataRole::Validation);
  ASSERT_EQ(back.records.size(), 2u);
  EXPECT_EQ(back.records[0].samples, a.samples);
  EXPECT_EQ(back.records[1].event_id, std::nullopt);
  EXPECT_EQ(back.records[1].label, Label::Noise);
}

TEST(WaveformIo, LineNumberedErrors) {
  std::stringstream ss;
  ss << R"({"format":"seisdetect-waveforms","version":1,"role":"train"})" << '\n'
     << R"({"trace_id":"a","event_id":"e","station":"S","channel":"C","sample_rate":100,"label":"event","magnitude":null,"samples":[1,2]})"
     << '\n'
     << R"({"trace_id":"b","event_id":null,"station":"S","channel":"C","sample_rate":-1,"label":"noise","magnitude":null,"samples":[1,2]})"
     << '\n';
  try {
    read_waveforms(ss);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(WaveformIo, DuplicateTraceRejected) {
  std::stringstream ss;
  const char* rec =
      R"({"trace_id":"a","event_id":null,"station":"S","channel":"C","sample_rate":100,"label":"noise","magnitude":null,"samples":[1,2]})";
  ss << R"({"format":"seisdetect-waveforms","version":1,"role":"train"})" << '\n' << rec << '\n' << rec << '\n';
  expect_code(ErrorCode::ParseError, [&] { read_waveforms(ss); });
}
