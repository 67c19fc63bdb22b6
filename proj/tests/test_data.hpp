#pragma once

#include <random>
#include <string>

#include "seisdetect/features.hpp"

namespace testutil {

// Small dense logistic problem: standard normal features, labels drawn from
// a logistic model with a few true weights, both classes guaranteed.
inline seisdetect::FeatureMatrix random_problem(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  seisdetect::FeatureMatrix m;
  for (std::size_t c = 0; c < cols; ++c) m.codes.push_back("F" + std::to_string(c + 1));
  std::vector<double> truth(cols);
  for (std::size_t c = 0; c < cols; ++c) truth[c] = c < 3 ? g(rng) : 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    double eta = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = g(rng);
      m.values.push_back(v);
      eta += truth[c] * v;
    }
    const bool event = r == 0 ? true : r == 1 ? false : u(rng) < 1.0 / (1.0 + std::exp(-eta));
    m.trace_ids.push_back("r" + std::to_string(r));
    m.labels.push_back(event ? seisdetect::Label::Event : seisdetect::Label::Noise);
  }
  return m;
}

}  // namespace testutil
