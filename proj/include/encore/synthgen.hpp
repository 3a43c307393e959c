#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "encore/dataset.hpp"
#include "encore/error.hpp"
#include "encore/numeric.hpp"
#include "encore/rng.hpp"

namespace encore {

// One simulated judge: scores are mu +- d/2 (chosen/rejected) plus Gaussian
// noise, clamped to [0,1], then snapped to the grid. Raising sigma raises the
// measured entropy of the rule and lowers its accuracy at the same time.
struct RaterConfig {
  int rule_index = 0;
  double d = 0.0;          // expected chosen-minus-rejected gap
  double sigma = 0.0;      // pre-quantization noise
  double grid_step = 0.1;  // emitted-score grid
  double mu = 0.5;         // base score level
};

struct CategoryMix {
  std::string name;
  double proportion = 1.0;
};

struct GeneratorConfig {
  std::vector<RaterConfig> raters;
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
  std::vector<CategoryMix> categories = {{"default", 1.0}};
};

inline void validate_config(const GeneratorConfig& cfg) {
  if (cfg.raters.empty()) fail(errc::bad_argument, "generator: need at least one rater");
  if (cfg.pairs < 1) fail(errc::bad_argument, "generator: need at least one pair");
  for (std::size_t k = 0; k < cfg.raters.size(); ++k) {
    const auto& rt = cfg.raters[k];
    if (rt.rule_index != static_cast<int>(k)) {
      fail(errc::bad_argument, "generator: rater " + std::to_string(k) + " has rule_index " +
                                   std::to_string(rt.rule_index));
    }
    if (rt.d < 0.0) fail(errc::bad_argument, "generator: discrimination must be >= 0");
    if (rt.sigma < 0.0) fail(errc::bad_argument, "generator: noise must be >= 0");
    if (!(rt.grid_step > 0.0 && rt.grid_step <= 1.0)) {
      fail(errc::bad_argument, "generator: grid step must be in (0,1]");
    }
    if (!(rt.mu >= 0.0 && rt.mu <= 1.0)) fail(errc::bad_argument, "generator: mu must be in [0,1]");
  }
  if (cfg.categories.empty()) fail(errc::bad_argument, "generator: need at least one category");
  double total = 0.0;
  for (const auto& c : cfg.categories) {
    if (c.proportion < 0.0) fail(errc::bad_argument, "generator: negative category proportion");
    total += c.proportion;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    fail(errc::bad_argument, "generator: category proportions must sum to 1");
  }
}

// Counter layout per pair i (stride S = 1 + 2R): category draw at i*S, rule
// k's Box-Muller unit pair at i*S+1+2k and i*S+2+2k. Pair i's scores never
// depend on M, so prefixes are seed-stable and generation can be partitioned
// by pair index without changing the output.
inline RatedDataset generate(const GeneratorConfig& cfg) {
  validate_config(cfg);
  const std::size_t r = cfg.raters.size();
  const std::uint64_t stride = 1 + 2 * static_cast<std::uint64_t>(r);
  CounterRng rng(cfg.seed);

  RatedDataset d;
  d.rules = placeholder_rules(r);
  d.pairs.reserve(cfg.pairs);
  for (std::size_t i = 0; i < cfg.pairs; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * stride;
    PreferencePair p;
    p.pair_id = "p" + std::to_string(i);

    double u = rng.unit_at(base);
    double cum = 0.0;
    p.category = cfg.categories.back().name;
    for (const auto& c : cfg.categories) {
      cum += c.proportion;
      if (u < cum) {
        p.category = c.name;
        break;
      }
    }

    p.chosen.resize(r);
    p.rejected.resize(r);
    for (std::size_t k = 0; k < r; ++k) {
      const auto& rt = cfg.raters[k];
      auto [e1, e2] = rng.normal_pair_at(base + 1 + 2 * k);
      p.chosen[k] = quantize(clamp01(rt.mu + 0.5 * rt.d + rt.sigma * e1), rt.grid_step);
      p.rejected[k] = quantize(clamp01(rt.mu - 0.5 * rt.d + rt.sigma * e2), rt.grid_step);
    }
    d.pairs.push_back(std::move(p));
  }
  return d;
}

// Standard fixture: R raters at d=0.3, grid 0.1, mu=0.9, sigma spaced linearly
// from sigma_min to sigma_max. The high base level mimics top-heavy safety
// rating histograms and keeps accuracy off its ceiling across the noise range.
inline GeneratorConfig graded_rater_config(std::size_t r, double sigma_min = 0.02,
                                           double sigma_max = 0.6, std::size_t pairs = 10000,
                                           std::uint64_t seed = 0) {
  if (r < 3) fail(errc::bad_argument, "graded_rater_suite: need at least 3 rules");
  if (sigma_min < 0.0 || sigma_max < sigma_min) {
    fail(errc::bad_argument, "graded_rater_suite: need 0 <= sigma_min <= sigma_max");
  }
  GeneratorConfig cfg;
  cfg.pairs = pairs;
  cfg.seed = seed;
  cfg.raters.reserve(r);
  for (std::size_t k = 0; k < r; ++k) {
    RaterConfig rt;
    rt.rule_index = static_cast<int>(k);
    rt.d = 0.3;
    rt.sigma = sigma_min + (sigma_max - sigma_min) * static_cast<double>(k) /
                               static_cast<double>(r - 1);
    rt.grid_step = 0.1;
    rt.mu = 0.9;
    cfg.raters.push_back(rt);
  }
  return cfg;
}

inline RatedDataset graded_rater_suite(std::size_t r, double sigma_min = 0.02,
                                       double sigma_max = 0.6, std::size_t pairs = 10000,
                                       std::uint64_t seed = 0) {
  return generate(graded_rater_config(r, sigma_min, sigma_max, pairs, seed));
}

}  // namespace encore
