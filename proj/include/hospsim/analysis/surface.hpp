#pragma once

#include "hospsim/analysis/ols.hpp"

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace hospsim {

struct SurfaceGrid {
  char factor_i = 'A';
  char factor_j = 'B';
  std::vector<double> levels;  // shared axis, -1 .. +1
  Eigen::MatrixXd values;      // values(a, b) at x_i = levels[a], x_j = levels[b]
  /// Coded corners (x_i, x_j) attaining the smallest corner value.
  std::vector<std::pair<int, int>> minimizing_corners;
  double min_value = 0.0;
};

/// Fitted polynomial over a points×points grid on [-1, 1]², every other
/// factor at 0. Needs the main terms of both factors and their interaction;
/// throws std::invalid_argument naming the missing term otherwise.
SurfaceGrid response_surface_grid(const ScreeningModel& model, char factor_i, char factor_j, int points = 21);

/// Value of the (i, j) slice at one point, other factors at 0.
double surface_value(const ScreeningModel& model, char factor_i, char factor_j, double x_i, double x_j);

}  // namespace hospsim
