#include "hospsim/analysis/shapiro_wilk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace hospsim {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double lo = 0.02425;
  double x = 0.0;
  if (p < lo) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - lo) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement; the tail form keeps precision for p near 1.
  const double e = p < 0.5 ? normal_cdf(x) - p : (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2);
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

namespace {

double poly(const double* c, int n, double x) {
  double r = c[n - 1];
  for (int i = n - 2; i >= 0; --i) r = r * x + c[i];
  return r;
}

}  // namespace

ShapiroWilkResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000) throw std::invalid_argument("shapiro_wilk: n must lie in 3..5000, got " + std::to_string(n));
  std::vector<double> x(sample.begin(), sample.end());
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("shapiro_wilk: non-finite value");
  }
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 1e-19 * std::max(1.0, std::abs(x.front())))) throw std::invalid_argument("shapiro_wilk: zero variance");

  static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
  static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  static constexpr double c3[] = {0.5440, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};
  static constexpr double g[] = {-2.273, 0.459};

  const std::size_t half = n / 2;
  const double an = static_cast<double>(n);
  std::vector<double> a(half + 1, 0.0);  // 1-based
  if (n == 3) {
    a[1] = std::numbers::sqrt2 / 2.0;
  } else {
    std::vector<double> m(half + 1, 0.0);
    double summ2 = 0.0;
    for (std::size_t i = 1; i <= half; ++i) {
      m[i] = normal_quantile((static_cast<double>(i) - 0.375) / (an + 0.25));
      summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, 6, rsn) - m[1] / ssumm2;
    std::size_t first = 2;
    double fac = 0.0;
    if (n > 5) {
      first = 3;
      const double a2 = -m[2] / ssumm2 + poly(c2, 6, rsn);
      fac = std::sqrt((summ2 - 2.0 * m[1] * m[1] - 2.0 * m[2] * m[2]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[2] = a2;
    } else {
      fac = std::sqrt((summ2 - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1));
    }
    a[1] = a1;
    for (std::size_t i = first; i <= half; ++i) a[i] = -m[i] / fac;
  }

  // Scale by the range first, as the reference routine does.
  const double lo = x.front();
  for (double& v : x) v = (v - lo) / range;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= an;
  double ssq = 0.0;
  for (double v : x) ssq += (v - mean) * (v - mean);
  double num = 0.0;
  for (std::size_t i = 1; i <= half; ++i) num += a[i] * (x[n - i] - x[i - 1]);
  double w = num * num / ssq;
  w = std::min(w, 1.0);

  ShapiroWilkResult r;
  r.w = w;
  if (n == 3) {
    const double pi6 = 6.0 / std::numbers::pi;
    const double stqr = std::numbers::pi / 3.0;
    r.p_value = std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
    return r;
  }
  const double w1 = 1.0 - w;
  if (w1 <= 0.0) {
    r.p_value = 1.0;
    return r;
  }
  double y = std::log(w1);
  double mu = 0.0;
  double s = 0.0;
  if (n <= 11) {
    const double gamma = poly(g, 2, an);
    if (y >= gamma) {
      r.p_value = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    mu = poly(c3, 4, an);
    s = std::exp(poly(c4, 4, an));
  } else {
    const double xx = std::log(an);
    mu = poly(c5, 4, xx);
    s = std::exp(poly(c6, 3, xx));
  }
  r.p_value = 0.5 * std::erfc(((y - mu) / s) / std::numbers::sqrt2);
  return r;
}

}  // namespace hospsim
