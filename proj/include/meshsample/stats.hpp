#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "meshsample/error.hpp"
#include "meshsample/inversion.hpp"

namespace meshsample {

// Joint barycentric density p(u, v) on the unit simplex.
inline double joint_density(double u, double v, RelativeWeights rw) {
  return 2.0 * (u * rw.phi_u + v * rw.phi_v + 1.0 - (rw.phi_u + rw.phi_v) / 3.0);
}

inline double analytic_cdf_u(double u, RelativeWeights rw) { return marginal_cdf_u(u, rw); }

// Unconditional CDF of v; the u <-> v mirror of the u marginal.
inline double analytic_cdf_v(double v, RelativeWeights rw) {
  const double l = (2.0 * rw.phi_v - rw.phi_u) / 3.0;
  const double v1 = 1.0 - v;
  return v * (2.0 - v) - l * v * v1 * v1;
}

// Right-continuous step function F(x) = #{samples <= x} / N.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> sorted_samples) : samples_(std::move(sorted_samples)) {
    if (samples_.empty()) throw Error(ErrorCode::empty_sample, "empirical CDF of no samples");
    if (!std::is_sorted(samples_.begin(), samples_.end()))
      throw Error(ErrorCode::invalid_argument, "empirical CDF samples must be sorted");
  }

  double operator()(double x) const {
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
  }

  std::size_t size() const noexcept { return samples_.size(); }

 private:
  std::vector<double> samples_;
};

// 99% critical values (asymptotic Kolmogorov distribution, c = 1.63).
inline constexpr double kKsCoefficient99 = 1.63;

inline double ks_critical_one_sample(std::size_t n) {
  return kKsCoefficient99 / std::sqrt(static_cast<double>(n));
}

inline double ks_critical_two_sample(std::size_t n, std::size_t m) {
  const double a = static_cast<double>(n);
  const double b = static_cast<double>(m);
  return kKsCoefficient99 * std::sqrt((a + b) / (a * b));
}

struct KsReport {
  RelativeWeights grid_point;
  std::size_t sample_count = 0;
  double d_statistic = 0;
  double d_critical = 0;
  bool pass = false;
};

inline constexpr std::size_t kKsMinSamples = 1000;

// Sup distance between the empirical CDF of `samples` and `cdf`, evaluated
// on both sides of every jump.
template <class Cdf>
KsReport ks_one_sample(std::span<const double> samples, Cdf&& cdf, RelativeWeights grid_point = {}) {
  if (samples.empty()) throw Error(ErrorCode::empty_sample, "KS test on no samples");
  if (samples.size() < kKsMinSamples)
    throw Error(ErrorCode::invalid_argument, "KS test needs at least 1000 samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  const double n = static_cast<double>(sorted.size());
  double d = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  KsReport report;
  report.grid_point = grid_point;
  report.sample_count = sorted.size();
  report.d_statistic = d;
  report.d_critical = ks_critical_one_sample(sorted.size());
  report.pass = d < report.d_critical;
  return report;
}

struct KsTwoSampleReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double d_statistic = 0;
  double d_critical = 0;
  bool pass = false;
};

inline KsTwoSampleReport ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::empty_sample, "two-sample KS on no samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());

  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  KsTwoSampleReport report{x.size(), y.size(), d, ks_critical_two_sample(x.size(), y.size()), false};
  report.pass = d < report.d_critical;
  return report;
}

}  // namespace meshsample
