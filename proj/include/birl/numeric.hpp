#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace birl {

/// log(sum exp(x_i)), stable for large |x_i|. Empty input gives -inf.
inline double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double peak = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(peak)) return peak;
  double total = 0.0;
  for (double x : xs) total += std::exp(x - peak);
  return peak + std::log(total);
}

inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

/// log(mean exp(x_i)).
inline double log_mean_exp(std::span<const double> xs) {
  return log_sum_exp(xs) - std::log(static_cast<double>(xs.size()));
}

}  // namespace birl
