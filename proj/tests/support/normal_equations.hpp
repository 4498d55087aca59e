#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace testsupport {

using Rows = std::vector<std::vector<double>>;

/// Solves (XᵀX) b = Xᵀy by Gauss-Jordan elimination with partial pivoting,
/// in long double. Kept free of Eigen so it checks the library fit independently.
inline std::vector<double> normal_equations(const Rows& X, const std::vector<double>& y) {
  const std::size_t n = X.size(), p = X.front().size();
  std::vector<std::vector<long double>> a(p, std::vector<long double>(p + 1, 0.0L));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t r = 0; r < n; ++r) a[i][j] += static_cast<long double>(X[r][i]) * X[r][j];
    }
    for (std::size_t r = 0; r < n; ++r) a[i][p] += static_cast<long double>(X[r][i]) * y[r];
  }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r) {
      if (std::fabs(static_cast<double>(a[r][c])) > std::fabs(static_cast<double>(a[piv][c]))) piv = r;
    }
    if (a[piv][c] == 0.0L) throw std::runtime_error("singular normal equations");
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= p; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> b(p);
  for (std::size_t i = 0; i < p; ++i) b[i] = static_cast<double>(a[i][p] / a[i][i]);
  return b;
}

}  // namespace testsupport
