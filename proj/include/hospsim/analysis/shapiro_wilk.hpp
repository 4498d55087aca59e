#pragma once

#include <span>

namespace hospsim {

/// Standard normal CDF.
double normal_cdf(double z);
/// Standard normal quantile, 0 < p < 1 (Acklam's rational fit plus one Halley step).
double normal_quantile(double p);

struct ShapiroWilkResult {
  double w = 0.0;
  double p_value = 0.0;
};

/// Shapiro–Wilk W and its p-value by Royston's approximation (AS R94).
/// Throws std::invalid_argument for n outside 3..5000, non-finite values or
/// zero range.
ShapiroWilkResult shapiro_wilk(std::span<const double> sample);

}  // namespace hospsim
