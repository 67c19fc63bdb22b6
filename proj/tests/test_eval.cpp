#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mcc_oracle.hpp"
#include "seisdetect/error.hpp"
#include "seisdetect/eval.hpp"

using namespace seisdetect;

namespace {

constexpr Label E = Label::Event;
constexpr Label N = Label::Noise;

template <typename F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Confusion, Examples) {
  const std::vector<Label> l{E, N};
  EXPECT_EQ(confusion(l, l), (ConfusionMatrix{1, 1, 0, 0}));
  const std::vector<Label> half{E, E, N, N}, none{N, N, N, N};
  EXPECT_EQ(confusion(half, none), (ConfusionMatrix{0, 2, 0, 2}));
}

TEST(Confusion, MatchesBruteForceTally) {
  std::mt19937_64 rng(1);
  std::bernoulli_distribution coin(0.4);
  std::vector<Label> l(1000), p(1000);
  ConfusionMatrix expected;
  for (std::size_t i = 0; i < l.size(); ++i) {
    l[i] = coin(rng) ? E : N;
    p[i] = coin(rng) ? E : N;
    if (l[i] == E && p[i] == E) ++expected.tp;
    if (l[i] == N && p[i] == N) ++expected.tn;
    if (l[i] == N && p[i] == E) ++expected.fp;
    if (l[i] == E && p[i] == N) ++expected.fn;
  }
  EXPECT_EQ(confusion(l, p), expected);
}

TEST(Confusion, ShapeMismatchAndEmpty) {
  const std::vector<Label> a{E}, b{E, N}, empty;
  expect_code(ErrorCode::ShapeMismatch, [&] { confusion(a, b); });
  expect_code(ErrorCode::DegenerateInput, [&] { confusion(empty, empty); });
}

TEST(Mcc, ReferenceConfusionMatrices) {
  const ConfusionMatrix lr{763, 1313, 5, 0}, cnn{627, 1318, 0, 127};
  EXPECT_NEAR(mcc(lr), testutil::mcc_oracle(lr), 1e-12);
  EXPECT_NEAR(mcc(cnn), testutil::mcc_oracle(cnn), 1e-12);
  EXPECT_NEAR(mcc(lr), 0.9948470509162414, 1e-12);
  EXPECT_NEAR(mcc(cnn), 0.8709071961491792, 1e-12);
}

TEST(Mcc, SingleClassAndPerfect) {
  EXPECT_EQ(mcc(ConfusionMatrix{0, 50, 0, 0}), 0.0);
  EXPECT_EQ(mcc(ConfusionMatrix{50, 0, 0, 0}), 0.0);
  EXPECT_EQ(mcc(ConfusionMatrix{12, 7, 0, 0}), 1.0);
  EXPECT_EQ(mcc(ConfusionMatrix{0, 0, 5, 9}), -1.0);
  expect_code(ErrorCode::DegenerateInput, [] { mcc(ConfusionMatrix{}); });
}

TEST(Mcc, LargeCountsDoNotOverflow) {
  const ConfusionMatrix m{4000000000ULL, 3000000000ULL, 20000000ULL, 10000000ULL};
  EXPECT_NEAR(mcc(m), testutil::mcc_oracle(m), 1e-12);
}

TEST(Mcc, SymmetryAntisymmetryAndBounds) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::uint64_t> u(0, 500);
  for (int i = 0; i < 10000; ++i) {
    const ConfusionMatrix m{u(rng), u(rng), u(rng), u(rng) + 1};
    const double v = mcc(m);
    EXPECT_EQ(v, mcc(ConfusionMatrix{m.tn, m.tp, m.fn, m.fp}));
    EXPECT_EQ(-v, mcc(ConfusionMatrix{m.fn, m.fp, m.tn, m.tp}));
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
    const double a = accuracy(m);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
}

TEST(Mcc, ExactArithmeticAgreementOnSmallMatrices) {
  for (std::uint64_t tp = 0; tp <= 30; ++tp)
    for (std::uint64_t tn = 0; tp + tn <= 30; ++tn)
      for (std::uint64_t fp = 0; tp + tn + fp <= 30; ++fp)
        for (std::uint64_t fn = 0; tp + tn + fp + fn <= 30; ++fn) {
          if (tp + tn + fp + fn == 0) continue;
          const ConfusionMatrix m{tp, tn, fp, fn};
          ASSERT_NEAR(mcc(m), testutil::mcc_oracle(m), 1e-12) << tp << " " << tn << " " << fp << " " << fn;
        }
}

TEST(Accuracy, Examples) {
  EXPECT_EQ(accuracy(ConfusionMatrix{3, 4, 0, 0}), 1.0);
  EXPECT_EQ(accuracy(ConfusionMatrix{627, 1318, 0, 127}), 1945.0 / 2072.0);
  expect_code(ErrorCode::DegenerateInput, [] { accuracy(ConfusionMatrix{}); });
}

TEST(McNemar, Examples) {
  const std::vector<Label> l{E, N, E, N}, p{E, E, N, N};
  const auto same = mcnemar_test(l, p, p);
  EXPECT_EQ(same.b, 0u);
  EXPECT_EQ(same.c, 0u);
  EXPECT_EQ(same.p_value, 1.0);
  EXPECT_FALSE(same.significant);
  EXPECT_NEAR(mcnemar_exact_p(10, 0), 2.0 * std::pow(0.5, 10), 1e-12);
  EXPECT_EQ(mcnemar_exact_p(1, 1), 1.0);
}

TEST(McNemar, CountsDiscordantPairs) {
  const std::vector<Label> l{E, E, N, N, E};
  const std::vector<Label> a{E, E, N, E, N};
  const std::vector<Label> b{E, N, E, N, N};
  const auto r = mcnemar_test(l, a, b);
  EXPECT_EQ(r.b, 2u);
  EXPECT_EQ(r.c, 1u);
  expect_code(ErrorCode::ShapeMismatch, [&] { mcnemar_test(l, a, std::vector<Label>{E}); });
}

TEST(McNemar, MatchesExactOracleAndIsSymmetric) {
  for (unsigned b = 0; b <= 60; ++b)
    for (unsigned c = 0; c <= 60; ++c) {
      const double p = mcnemar_exact_p(b, c);
      EXPECT_NEAR(p, testutil::mcnemar_oracle(b, c), 1e-12) << b << " " << c;
      EXPECT_EQ(p, mcnemar_exact_p(c, b));
      EXPECT_GT(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
}

TEST(McNemar, LargeCountsStayInRange) {
  const double p = mcnemar_exact_p(12000, 11000);
  EXPECT_GT(p, 0.0);
  EXPECT_LT(p, 1e-6);
  EXPECT_NEAR(mcnemar_exact_p(20000, 20000), 1.0, 1e-9);
}

TEST(EvalReport, JsonCarriesMetrics) {
  std::ostringstream out;
  write_eval_reports(out, {make_report("lr", ConfusionMatrix{763, 1313, 5, 0})});
  EXPECT_NE(out.str().find("\"seisdetect-eval\""), std::string::npos);
  EXPECT_NE(out.str().find("\"lr\""), std::string::npos);
}
