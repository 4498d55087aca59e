#pragma once

#include "hospsim/sim/rng.hpp"
#include "hospsim/sim/time.hpp"

#include <cmath>
#include <span>
#include <stdexcept>

namespace hospsim {

/// Triangular distribution. Two-parameter Tri(a, b) uses the midpoint as mode.
struct Triangular {
  double min = 0.0;
  double max = 0.0;
  double mode = 0.0;

  static constexpr Triangular symmetric(double a, double b) { return {a, b, 0.5 * (a + b)}; }
  constexpr double mean() const { return (min + max + mode) / 3.0; }
  constexpr Triangular scaled(double k) const { return {min * k, max * k, mode * k}; }
};

inline double sample_triangular(RngStream& stream, double min, double max, double mode) {
  if (!(min <= mode && mode <= max)) {
    throw std::invalid_argument("sample_triangular: require min <= mode <= max");
  }
  const double u = stream.uniform();
  const double width = max - min;
  if (width == 0.0) return min;
  const double split = (mode - min) / width;
  if (u < split) return min + std::sqrt(u * width * (mode - min));
  return max - std::sqrt((1.0 - u) * width * (max - mode));
}

inline double sample_triangular(RngStream& stream, const Triangular& t) {
  return sample_triangular(stream, t.min, t.max, t.mode);
}

inline double sample_exponential(RngStream& stream, double mean) {
  return -mean * std::log(stream.uniform_open());
}

/// Poisson-process gap in minutes for an arrival rate given per day.
inline double sample_interarrival(RngStream& stream, double rate_per_day) {
  if (!(rate_per_day > 0.0)) {
    throw std::invalid_argument("sample_interarrival: rate must be positive");
  }
  return sample_exponential(stream, kMinutesPerDay / rate_per_day);
}

/// Index drawn from a discrete distribution given by non-negative weights.
inline std::size_t sample_categorical(RngStream& stream, std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw std::invalid_argument("sample_categorical: weights sum to zero");
  const double u = stream.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  // u can only land here through rounding; return the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

}  // namespace hospsim
