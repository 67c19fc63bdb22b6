#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numeric>

namespace seisdetect::detail {
namespace {

// FFTW planning touches global state; execution with fresh arrays does not.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class R2CPlan {
 public:
  R2CPlan(int n, double* in, fftw_complex* out) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
  }
  ~R2CPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  R2CPlan(const R2CPlan&) = delete;
  R2CPlan& operator=(const R2CPlan&) = delete;
  void run() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

class C2RPlan {
 public:
  C2RPlan(int n, fftw_complex* in, double* out) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_c2r_1d(n, in, out, FFTW_ESTIMATE);
  }
  ~C2RPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  C2RPlan(const C2RPlan&) = delete;
  C2RPlan& operator=(const C2RPlan&) = delete;
  void run() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<std::complex<double>> rfft(std::span<const double> x, std::size_t nfft) {
  std::vector<double> in(nfft, 0.0);
  std::copy_n(x.begin(), std::min(x.size(), nfft), in.begin());
  std::vector<std::complex<double>> out(nfft / 2 + 1);
  R2CPlan plan(static_cast<int>(nfft), in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  plan.run();
  return out;
}

std::vector<double> autocorrelation(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t nfft = next_pow2(n) << 1;
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centered(n);
  std::transform(x.begin(), x.end(), centered.begin(), [m](double v) { return v - m; });

  auto spec = rfft(centered, nfft);
  for (auto& c : spec) c = std::norm(c);
  std::vector<double> acf(nfft);
  C2RPlan plan(static_cast<int>(nfft), reinterpret_cast<fftw_complex*>(spec.data()), acf.data());
  plan.run();
  const double r0 = acf[0];
  for (auto& v : acf) v /= r0;
  return acf;
}

}  // namespace seisdetect::detail
