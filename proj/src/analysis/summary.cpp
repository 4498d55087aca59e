#include "hospsim/analysis/summary.hpp"

#include "hospsim/analysis/shapiro_wilk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hospsim {

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Quartiles quartiles(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("quartiles: empty sample");
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  Quartiles q;
  q.n = s.size();
  q.min = s.front();
  q.max = s.back();
  q.q1 = quantile_sorted(s, 0.25);
  q.median = quantile_sorted(s, 0.5);
  q.q3 = quantile_sorted(s, 0.75);
  return q;
}

std::vector<std::pair<double, double>> normal_qq_points(std::span<const double> residuals) {
  std::vector<double> s(residuals.begin(), residuals.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  const double a = s.size() <= 10 ? 0.375 : 0.5;
  std::vector<std::pair<double, double>> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.emplace_back(normal_quantile((static_cast<double>(i + 1) - a) / (n + 1.0 - 2.0 * a)), s[i]);
  }
  return out;
}

}  // namespace hospsim
