#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace encore {

// Pairwise (cascade) summation: error grows O(log n) instead of O(n), and the
// reduction tree is a pure function of length, so results are bit-stable no
// matter how callers partition work.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// log(1 + exp(x)) without overflow for large x or cancellation for small.
inline double log1p_exp(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Snap to the grid {0, step, 2*step, ...} capped at the largest point <= 1.
// Ties round half up; clamp before calling so x is already in [0,1].
inline double quantize(double x, double step) {
  double k = std::floor(x / step + 0.5);
  double k_max = std::floor(1.0 / step + 1e-9);
  if (k > k_max) k = k_max;
  return k * step;
}

}  // namespace encore
