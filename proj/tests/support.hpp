#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "birl/environment.hpp"

namespace birl::test {

constexpr double kHalfPi = std::numbers::pi / 2.0;

/// One coordinate in [lower, upper], horizon T, affine features
/// phi(s) = offset + slope * s. Used for the linear-environment examples.
class LinearEnv final : public Environment {
 public:
  LinearEnv(Vector offset, Vector slope, std::size_t horizon = 1, double lower = 0.0,
            double upper = 1.0)
      : Environment(shape(offset.size(), horizon, lower, upper)),
        offset_(std::move(offset)),
        slope_(std::move(slope)) {}

  void state_features(State s, std::span<double> out) const override {
    for (std::size_t k = 0; k < offset_.size(); ++k) out[k] = offset_[k] + slope_[k] * s[0];
  }

 private:
  static EnvironmentShape shape(std::size_t d, std::size_t horizon, double lower, double upper) {
    EnvironmentShape s;
    s.name = "linear";
    s.bounds = Bounds{{lower}, {upper}, {false}};
    s.horizon = horizon;
    s.feature_dim = d;
    s.grid_resolution = 1000;
    s.initial = Trajectory(1, Vector(horizon, lower));
    return s;
  }

  Vector offset_;
  Vector slope_;
};

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                             static_cast<double>(j) / static_cast<double>(b.size())));
  }
  return d;
}

/// Critical KS distance at p = 0.01 (asymptotic).
inline double ks_critical(double n) { return 1.628 / std::sqrt(n); }
inline double ks_critical(double n, double m) { return 1.628 * std::sqrt((n + m) / (n * m)); }

/// Composite midpoint rule for the integral of exp(f) over [a, b].
template <class F>
double midpoint_integral_exp(F f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::exp(f(a + (static_cast<double>(i) + 0.5) * h));
  return total * h;
}

inline double cup_reward(double s, double angle) {
  return -5.0 * std::cos(angle) * (s + 1.0) - std::sin(angle) * (kHalfPi - s);
}

}  // namespace birl::test
