#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hospsim {

/// Five-number summary with linearly interpolated quartiles.
struct Quartiles {
  std::size_t n = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Throws std::invalid_argument for an empty sample.
Quartiles quartiles(std::span<const double> sample);

/// Sample quantile, linear interpolation between order statistics (p in [0, 1]).
double quantile_sorted(std::span<const double> sorted, double p);

/// Normal-plot pairs (theoretical quantile, sorted residual); plotting
/// positions (i - a) / (n + 1 - 2a) with a = 3/8 for n <= 10, else 1/2.
std::vector<std::pair<double, double>> normal_qq_points(std::span<const double> residuals);

}  // namespace hospsim
