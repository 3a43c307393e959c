#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace encore {

// Counter-based deterministic generator: draw i for seed s is
// splitmix64_mix(s + (i+1)*0x9E3779B97F4A7C15). Random access by counter makes
// substreams trivial (partition the counter space) and the sequence is
// reproducible from the recipe alone in any language; the reference draws for
// seed 42 live in data/rng_reference.json.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t at(std::uint64_t i) const {
    return mix(seed_ + (i + 1) * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform on [0,1): top 53 bits scaled by 2^-53.
  double unit_at(std::uint64_t i) const {
    return static_cast<double>(at(i) >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return at(counter_++); }
  double next_unit() { return unit_at(counter_++); }

  // Box-Muller from two unit draws; both normals are returned so callers can
  // keep the two-counters-per-pair layout without wasting a draw.
  std::pair<double, double> normal_pair_at(std::uint64_t i) const {
    double u1 = unit_at(i);
    double u2 = unit_at(i + 1);
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  std::pair<double, double> next_normal_pair() {
    auto z = normal_pair_at(counter_);
    counter_ += 2;
    return z;
  }

  // Unit-rate exponential via inverse CDF; log1p keeps it finite for u near 0.
  double exponential_at(std::uint64_t i) const { return -std::log1p(-unit_at(i)); }
  double next_exponential() { return exponential_at(counter_++); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace encore
