#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "encore/error.hpp"
#include "encore/numeric.hpp"

namespace encore {

struct CorrelationResult {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  std::string x_label = "x";
  std::string y_label = "y";
};

namespace detail {

inline double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  fail(errc::non_finite, "incomplete beta did not converge");
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double incbeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) fail(errc::bad_argument, "incbeta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double front = std::exp(a * std::log(x) + b * std::log1p(-x) - detail::lbeta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::betacf(a, b, x) / a;
  return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

// Two-sided p-value for Student's t with nu degrees of freedom:
// P(|T| >= |t|) = I_{nu/(nu+t^2)}(nu/2, 1/2).
inline double t_test_p_two_sided(double t, double nu) {
  if (!(nu > 0.0)) fail(errc::bad_argument, "t-test: degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  return incbeta(0.5 * nu, 0.5, nu / (nu + t * t));
}

// Sample Pearson correlation with a two-sided t-test significance:
// t = r*sqrt((n-2)/(1-r^2)) against t_{n-2}.
inline CorrelationResult pearson(std::span<const double> x, std::span<const double> y,
                                 std::string x_label = "x", std::string y_label = "y") {
  if (x.size() != y.size()) fail(errc::dimension_mismatch, "pearson: length mismatch");
  std::size_t n = x.size();
  if (n < 3) fail(errc::bad_argument, "pearson: need n >= 3");

  double mx = pairwise_sum(x) / static_cast<double>(n);
  double my = pairwise_sum(y) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0) fail(errc::degenerate_sample, "pearson: zero variance in " + x_label);
  if (syy == 0.0) fail(errc::degenerate_sample, "pearson: zero variance in " + y_label);

  double r = sxy / std::sqrt(sxx * syy);
  if (r > 1.0) r = 1.0;
  if (r < -1.0) r = -1.0;

  double nu = static_cast<double>(n - 2);
  double one_minus_r2 = (1.0 - r) * (1.0 + r);
  double p;
  if (one_minus_r2 <= 0.0) {
    p = 0.0;
  } else {
    double t = r * std::sqrt(nu / one_minus_r2);
    p = t_test_p_two_sided(t, nu);
  }
  return {r, p, n, std::move(x_label), std::move(y_label)};
}

}  // namespace encore
