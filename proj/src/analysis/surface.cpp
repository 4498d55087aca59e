#include "hospsim/analysis/surface.hpp"

#include <cmath>
#include <stdexcept>

namespace hospsim {

namespace {

double term_or_zero(const ScreeningModel& m, std::string_view t) { return m.coefficient(t).value_or(0.0); }

}  // namespace

double surface_value(const ScreeningModel& model, char factor_i, char factor_j, double x_i, double x_j) {
  const double b0 = term_or_zero(model, kInterceptTerm);
  const double bi = term_or_zero(model, std::string(1, factor_i));
  const double bj = term_or_zero(model, std::string(1, factor_j));
  const double bij = term_or_zero(model, term_name({factor_i, factor_j}));
  return b0 + bi * x_i + bj * x_j + bij * x_i * x_j;
}

SurfaceGrid response_surface_grid(const ScreeningModel& model, char factor_i, char factor_j, int points) {
  if (factor_i == factor_j) throw std::invalid_argument("response_surface_grid: factors must differ");
  if (points < 2) throw std::invalid_argument("response_surface_grid: need at least 2 points per axis");
  for (const std::string& t : {std::string(1, factor_i), std::string(1, factor_j), term_name({factor_i, factor_j})}) {
    if (!model.term_index(t)) throw std::invalid_argument("response_surface_grid: model has no term " + t);
  }
  SurfaceGrid g;
  g.factor_i = factor_i;
  g.factor_j = factor_j;
  for (int k = 0; k < points; ++k) g.levels.push_back(-1.0 + 2.0 * k / (points - 1));
  g.values.resize(points, points);
  for (int a = 0; a < points; ++a) {
    for (int b = 0; b < points; ++b) g.values(a, b) = surface_value(model, factor_i, factor_j, g.levels[a], g.levels[b]);
  }
  double best = 0.0;
  bool first = true;
  for (int xi : {-1, 1}) {
    for (int xj : {-1, 1}) {
      const double v = surface_value(model, factor_i, factor_j, xi, xj);
      const double tol = 1e-12 * (1.0 + std::abs(v));
      if (first || v < best - tol) {
        g.minimizing_corners.assign(1, {xi, xj});
        best = v;
        first = false;
      } else if (std::abs(v - best) <= tol) {
        g.minimizing_corners.emplace_back(xi, xj);
      }
    }
  }
  g.min_value = best;
  return g;
}

}  // namespace hospsim
