#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "seisdetect/error.hpp"
#include "seisdetect/features.hpp"
#include "test_util.hpp"

using namespace seisdetect;

namespace {

template <typename F>
std::string expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    return e.what();
  }
  return {};
}

WaveformRecord noisy_record(const std::string& id, std::uint64_t seed, std::size_t n = 1200, double fs = 100.0) {
  WaveformRecord r;
  r.trace_id = id;
  r.station = "S";
  r.channel = "Z";
  r.sample_rate = fs;
  r.samples = testutil::gaussian(n, seed);
  const auto s = testutil::sine(n, 7.0, fs, 1.5);
  for (std::size_t i = 0; i < n; ++i) r.samples[i] += s[i];
  r.label = Label::Noise;
  return r;
}

FeatureMatrix small_matrix(const std::vector<std::vector<double>>& cols, const std::vector<std::string>& codes) {
  FeatureMatrix m;
  m.codes = codes;
  const std::size_t rows = cols.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    m.trace_ids.push_back("r" + std::to_string(r));
    m.labels.push_back(r % 2 ? Label::Event : Label::Noise);
    for (const auto& c : cols) m.values.push_back(c[r]);
  }
  return m;
}

}  // namespace

TEST(Registry, CanonicalHasTwentyTwo) {
  const auto ids = list_features(canonical_registry());
  ASSERT_EQ(ids.size(), 22u);
  for (const char* c : {"C10", "C11", "C14", "C15"}) {
    EXPECT_NE(std::find(ids.begin(), ids.end(), c), ids.end()) << c;
  }
}

TEST(Registry, ReproductionAddsFourSurrogates) {
  const auto ids = list_features(reproduction_registry());
  ASSERT_EQ(ids.size(), 26u);
  EXPECT_EQ((std::vector<std::string>(ids.begin(), ids.begin() + 4)),
            (std::vector<std::string>{"W1", "W2", "W3", "W4"}));
}

TEST(Registry, EmptyListsNothing) { EXPECT_TRUE(list_features(FeatureRegistry{}).empty()); }

TEST(Registry, DuplicateRejected) {
  FeatureRegistry r;
  r.merge(surrogate_registry());
  expect_code(ErrorCode::DuplicateFeature, [&] { r.merge(surrogate_registry()); });
}

TEST(Registry, EveryEntryDocumented) {
  const auto& reg = reproduction_registry();
  for (const auto& c : reg.list()) {
    EXPECT_FALSE(reg.at(c).name.empty()) << c;
    EXPECT_FALSE(reg.at(c).description.empty()) << c;
  }
}

TEST(ExtractFeature, ConstantSeriesIsDegenerateForEveryFeature) {
  const std::vector<double> x(1000, 2.0);
  const auto& reg = reproduction_registry();
  for (const auto& c : reg.list()) {
    expect_code(ErrorCode::DegenerateSeries, [&] { extract_feature(x, reg, c, 100.0); });
  }
}

TEST(ExtractFeature, UnknownCode) {
  const auto x = testutil::gaussian(100, 1);
  expect_code(ErrorCode::UnknownFeature, [&] { extract_feature(x, canonical_registry(), "ZZ"); });
}

TEST(ExtractFeature, TooShortOrNonFinite) {
  expect_code(ErrorCode::DegenerateSeries,
              [&] { extract_feature(testutil::gaussian(5, 1), canonical_registry(), "C1"); });
  auto x = testutil::gaussian(100, 1);
  x[10] = std::nan("");
  expect_code(ErrorCode::DegenerateSeries, [&] { extract_feature(x, canonical_registry(), "C1"); });
}

TEST(ExtractFeature, Deterministic) {
  const auto x = testutil::gaussian(1500, 33);
  const auto& reg = reproduction_registry();
  for (const auto& c : reg.list()) {
    const double a = extract_feature(x, reg, c, 100.0);
    const double b = extract_feature(x, reg, c, 100.0);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0) << c;
  }
}

TEST(ExtractFeature, AffineInvarianceFlagIsAccurate) {
  const auto& reg = reproduction_registry();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rec = noisy_record("x", seed, 1500);
    std::vector<double> y(rec.samples.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 2.0 * rec.samples[i] + 3.0;
    for (const auto& c : reg.list()) {
      const double a = extract_feature(rec.samples, reg, c, rec.sample_rate);
      const double b = extract_feature(y, reg, c, rec.sample_rate);
      const bool unchanged = std::fabs(a - b) <= 1e-6 * std::max(1.0, std::fabs(a));
      EXPECT_EQ(unchanged, reg.at(c).affine_invariant) << c << " " << a << " vs " << b;
    }
  }
}

TEST(ExtractVector, SelectedSubsetInOrder) {
  const auto rec = noisy_record("t", 3);
  const std::vector<std::string> sel{"C1", "C5", "C10", "C11", "C14", "C15", "C20", "C22"};
  const auto v = extract_vector(rec, canonical_registry(), sel);
  EXPECT_EQ(v.codes, sel);
  EXPECT_EQ(v.values.size(), 8u);
  EXPECT_EQ(v.trace_id, "t");
  EXPECT_EQ(*v.get("C10"), extract_feature(rec.samples, canonical_registry(), "C10", rec.sample_rate));
}

TEST(ExtractVector, EmptySelection) {
  const auto v = extract_vector(noisy_record("t", 3), canonical_registry(), {});
  EXPECT_TRUE(v.values.empty());
}

TEST(ExtractVector, UnregisteredSelection) {
  expect_code(ErrorCode::UnknownFeature,
              [] { extract_vector(noisy_record("t", 3), canonical_registry(), {"C1", "W1"}); });
}

TEST(ExtractVector, LabelCopied) {
  auto rec = noisy_record("t", 3);
  rec.label = Label::Event;
  rec.event_id = "e";
  EXPECT_EQ(extract_vector(rec, canonical_registry(), {"C1"}).label, Label::Event);
}

TEST(ExtractMatrix, ParallelMatchesSerial) {
  std::vector<WaveformRecord> recs;
  for (int i = 0; i < 12; ++i) recs.push_back(noisy_record("t" + std::to_string(i), static_cast<std::uint64_t>(i)));
  const auto codes = reproduction_registry().list();
  const auto a = extract_matrix_serial(recs, reproduction_registry(), codes);
  const auto b = extract_matrix(recs, reproduction_registry(), codes);
  EXPECT_EQ(a.trace_ids, b.trace_ids);
  ASSERT_EQ(a.values.size(), b.values.size());
  EXPECT_EQ(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)), 0);
}

TEST(ExtractMatrix, ReportsEveryDegenerateTrace) {
  std::vector<WaveformRecord> recs{noisy_record("good", 1), noisy_record("flat1", 2), noisy_record("flat2", 3)};
  recs[1].samples.assign(recs[1].samples.size(), 1.0);
  recs[2].samples.assign(recs[2].samples.size(), -4.0);
  const auto msg = expect_code(ErrorCode::DegenerateSeries,
                               [&] { extract_matrix(recs, canonical_registry(), {"C1", "C2"}); });
  EXPECT_NE(msg.find("flat1"), std::string::npos);
  EXPECT_NE(msg.find("flat2"), std::string::npos);
  EXPECT_EQ(msg.find("good"), std::string::npos);
}

TEST(FeatureMatrixIo, RoundTripBitExact) {
  std::vector<WaveformRecord> recs;
  for (int i = 0; i < 5; ++i) recs.push_back(noisy_record("t" + std::to_string(i), static_cast<std::uint64_t>(i)));
  auto m = extract_matrix(recs, reproduction_registry(), reproduction_registry().list());
  m.role = DataRole::Validation;
  std::stringstream ss;
  write_feature_matrix(ss, m);
  const auto back = read_feature_matrix(ss);
  EXPECT_EQ(back.role, DataRole::Validation);
  EXPECT_EQ(back.codes, m.codes);
  EXPECT_EQ(back.trace_ids, m.trace_ids);
  EXPECT_EQ(back.labels, m.labels);
  EXPECT_EQ(back.values, m.values);
}

TEST(FeatureMatrixIo, MalformedLineReported) {
  std::stringstream ss("# role=train\ntrace_id,label,C1\na,event,1.0\nb,noise,abc\n");
  const auto msg = expect_code(ErrorCode::ParseError, [&] { read_feature_matrix(ss); });
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
}

TEST(FeatureMatrix, SelectColumnsMissing) {
  const auto m = small_matrix({{1, 2}, {3, 4}}, {"A", "B"});
  const auto s = m.select_columns({"B"});
  EXPECT_EQ(s.values, (std::vector<double>{3, 4}));
  expect_code(ErrorCode::MissingFeature, [&] { m.select_columns({"C"}); });
}

TEST(Standardize, TwoValueFit) {
  const auto p = standardize_fit(small_matrix({{1.0, 3.0}}, {"A"}));
  EXPECT_DOUBLE_EQ(p.mean[0], 2.0);
  EXPECT_DOUBLE_EQ(p.stddev[0], std::sqrt(2.0));
}

TEST(Standardize, ConstantColumnNamed) {
  const auto msg = expect_code(ErrorCode::ZeroVariance,
                               [] { standardize_fit(small_matrix({{1, 2, 3}, {5, 5, 5}}, {"A", "B"})); });
  EXPECT_NE(msg.find("B"), std::string::npos);
  EXPECT_EQ(msg.find("'A'"), std::string::npos) << msg;
}

TEST(Standardize, ApplyToFittedDataGivesUnitMoments) {
  const auto m = small_matrix({testutil::gaussian(200, 1), testutil::gaussian(200, 2)}, {"A", "B"});
  const auto z = standardize_apply(m, standardize_fit(m));
  for (std::size_t c = 0; c < 2; ++c) {
    double s = 0, ss = 0;
    for (std::size_t r = 0; r < z.rows(); ++r) s += z.at(r, c);
    const double mu = s / static_cast<double>(z.rows());
    for (std::size_t r = 0; r < z.rows(); ++r) ss += (z.at(r, c) - mu) * (z.at(r, c) - mu);
    EXPECT_NEAR(mu, 0.0, 1e-10);
    EXPECT_NEAR(std::sqrt(ss / static_cast<double>(z.rows() - 1)), 1.0, 1e-10);
  }
}

TEST(Standardize, VectorExamples) {
  StandardizationParams p{{"A"}, {2.0}, {1.5}};
  FeatureVector v{"t", Label::Noise, {"A"}, {2.0}};
  EXPECT_EQ(standardize_apply(v, p).values[0], 0.0);
  v.values[0] = 5.0;
  EXPECT_DOUBLE_EQ(standardize_apply(v, p).values[0], 2.0);
  v.codes = {"B"};
  expect_code(ErrorCode::MissingParams, [&] { standardize_apply(v, p); });
}
