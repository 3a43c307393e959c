#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "encore/dataset.hpp"
#include "encore/entropy.hpp"
#include "encore/error.hpp"
#include "encore/rng.hpp"

namespace encore {

struct WeightVector {
  std::vector<double> weights;
  std::string scheme;
  nlohmann::json params = nlohmann::json::object();

  std::size_t size() const { return weights.size(); }
};

inline bool is_simplex(const WeightVector& w, double tol = 1e-9) {
  double sum = 0.0;
  for (double x : w.weights) {
    if (x < 0.0) return false;
    sum += x;
  }
  return std::fabs(sum - 1.0) <= tol;
}

// Softmax of -H/tau over rules. Subtracting the minimum entropy first keeps
// exp() in range for any tau; the result is identical because softmax is
// shift invariant.
inline WeightVector encore_weights(std::span<const double> entropies, double tau = 2.0) {
  if (!(tau > 0.0)) fail(errc::bad_argument, "encore_weights: tau must be positive");
  if (entropies.empty()) fail(errc::empty_input, "encore_weights: no rules");
  const double h_min = *std::min_element(entropies.begin(), entropies.end());
  WeightVector w;
  w.scheme = "encore";
  w.params = {{"tau", tau}};
  w.weights.reserve(entropies.size());
  double sum = 0.0;
  for (double h : entropies) {
    double e = std::exp(-(h - h_min) / tau);
    w.weights.push_back(e);
    sum += e;
  }
  for (double& x : w.weights) x /= sum;
  return w;
}

inline WeightVector encore_weights(const EntropyProfile& profile, double tau = 2.0) {
  return encore_weights(std::span<const double>(profile.per_rule), tau);
}

inline WeightVector uniform_weights(std::size_t r) {
  if (r == 0) fail(errc::bad_argument, "uniform_weights: need at least one rule");
  WeightVector w;
  w.scheme = "uniform";
  w.weights.assign(r, 1.0 / static_cast<double>(r));
  return w;
}

// One draw from Dirichlet(1,...,1): normalized unit-rate exponentials, so the
// whole vector is pinned down by the counter generator and the seed.
inline WeightVector dirichlet_weights(std::size_t r, std::uint64_t seed) {
  if (r == 0) fail(errc::bad_argument, "dirichlet_weights: need at least one rule");
  CounterRng rng(seed);
  WeightVector w;
  w.scheme = "dirichlet";
  w.params = {{"seed", seed}};
  w.weights.reserve(r);
  double sum = 0.0;
  for (std::size_t k = 0; k < r; ++k) {
    double e = rng.exponential_at(k);
    w.weights.push_back(e);
    sum += e;
  }
  for (double& x : w.weights) x /= sum;
  return w;
}

inline WeightVector single_rule_weights(std::size_t r, std::size_t k) {
  if (r == 0) fail(errc::bad_argument, "single_rule_weights: need at least one rule");
  if (k >= r) {
    fail(errc::bad_argument, "single_rule_weights: rule " + std::to_string(k) +
                                 " out of range for R=" + std::to_string(r));
  }
  WeightVector w;
  w.scheme = "single";
  w.params = {{"rule", k}};
  w.weights.assign(r, 0.0);
  w.weights[k] = 1.0;
  return w;
}

// The K lowest-entropy rules share weight 1/K; entropy ties go to the lower
// rule index so reports are reproducible.
inline WeightVector topk_weights(const EntropyProfile& profile, std::size_t k) {
  const std::size_t r = profile.per_rule.size();
  if (k < 1 || k > r) fail(errc::bad_argument, "topk_weights: K out of range");
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return profile.per_rule[a] < profile.per_rule[b];
  });
  WeightVector w;
  w.scheme = "topk";
  w.weights.assign(r, 0.0);
  std::vector<std::size_t> selected(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(selected.begin(), selected.end());
  for (std::size_t idx : selected) w.weights[idx] = 1.0 / static_cast<double>(k);
  w.params = {{"k", k}, {"rules", selected}};
  return w;
}

// K distinct rules chosen uniformly at random, each weighted 1/K (the random
// counterpart of topk for selection baselines).
inline WeightVector random_subset_weights(std::size_t r, std::size_t k, std::uint64_t seed) {
  if (k < 1 || k > r) fail(errc::bad_argument, "random_subset_weights: K out of range");
  std::vector<std::size_t> pool(r);
  std::iota(pool.begin(), pool.end(), 0);
  CounterRng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.unit_at(i) * static_cast<double>(r - i));
    if (j >= r) j = r - 1;
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> selected(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(selected.begin(), selected.end());
  WeightVector w;
  w.scheme = "random_subset";
  w.params = {{"k", k}, {"seed", seed}, {"rules", selected}};
  w.weights.assign(r, 0.0);
  for (std::size_t idx : selected) w.weights[idx] = 1.0 / static_cast<double>(k);
  return w;
}

inline double compose(const WeightVector& w, const ScoreVector& s) {
  if (w.weights.size() != s.size()) {
    fail(errc::dimension_mismatch, "compose: " + std::to_string(w.weights.size()) +
                                       " weights vs " + std::to_string(s.size()) + " scores");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) acc += w.weights[k] * s[k];
  return acc;
}

// Euclidean projection onto the probability simplex (sort-based).
inline std::vector<double> project_to_simplex(std::vector<double> v) {
  if (v.empty()) fail(errc::bad_argument, "project_to_simplex: empty vector");
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

inline void to_json(nlohmann::json& j, const WeightVector& w) {
  j = nlohmann::json{{"scheme", w.scheme}, {"params", w.params}, {"weights", w.weights}};
}

inline void from_json(const nlohmann::json& j, WeightVector& w) {
  w.scheme = j.at("scheme").get<std::string>();
  w.params = j.value("params", nlohmann::json::object());
  w.weights = j.at("weights").get<std::vector<double>>();
}

}  // namespace encore
