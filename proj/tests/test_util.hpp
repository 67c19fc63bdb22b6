#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

inline std::vector<double> sine(std::size_t n, double freq, double fs, double amp = 1.0, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = amp * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs + phase);
  }
  return x;
}

// Amplitude of the `freq` component over the central half of the signal,
// by projection onto sine and cosine.
inline double amplitude_at(const std::vector<double>& x, double freq, double fs) {
  const std::size_t lo = x.size() / 4, hi = 3 * x.size() / 4;
  double s = 0.0, c = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double w = 2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs;
    s += x[i] * std::sin(w);
    c += x[i] * std::cos(w);
  }
  const double n = static_cast<double>(hi - lo);
  return 2.0 * std::sqrt(s * s + c * c) / n;
}

inline std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::path(SEISDETECT_SCRATCH_DIR) / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testutil
