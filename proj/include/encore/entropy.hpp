#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "encore/dataset.hpp"
#include "encore/error.hpp"
#include "encore/numeric.hpp"

namespace encore {

enum class EntropyMethod { discrete, differential };

struct EntropyOptions {
  std::optional<double> grid_step;  // discrete: snap to this grid; unset = exact values
  std::optional<double> bandwidth;  // differential: fixed h; unset = Silverman's rule
  int grid_points = 1024;           // differential: integration nodes
};

struct EntropyProfile {
  EntropyMethod method = EntropyMethod::discrete;
  std::vector<double> per_rule;           // nats
  std::vector<std::size_t> support_sizes; // discrete only
  std::vector<double> bandwidths;         // differential only
  std::size_t sample_count = 0;
};

namespace detail {

struct DiscreteEstimate {
  double entropy;
  std::size_t support;
};

inline DiscreteEstimate discrete_estimate(std::span<const double> samples,
                                          std::optional<double> grid_step) {
  if (samples.empty()) fail(errc::empty_input, "discrete_entropy: no samples");
  std::vector<double> v(samples.begin(), samples.end());
  if (grid_step) {
    double step = *grid_step;
    if (!(step > 0.0 && step <= 1.0)) fail(errc::bad_argument, "grid step must be in (0,1]");
    for (double& x : v) x = quantize(x, step);
  }
  std::sort(v.begin(), v.end());

  // H = ln n - (1/n) * sum over values of c*ln c; zero counts never appear so
  // the 0*log 0 convention is automatic.
  const double n = static_cast<double>(v.size());
  double acc = 0.0;
  std::size_t support = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double c = static_cast<double>(j - i);
    acc += c * std::log(c);
    ++support;
    i = j;
  }
  double h = std::log(n) - acc / n;
  return {h < 0.0 ? 0.0 : h, support};
}

struct KdeEstimate {
  double entropy;
  double bandwidth;
};

inline KdeEstimate kde_estimate(std::span<const double> samples, std::optional<double> bandwidth,
                                int grid_points) {
  const std::size_t n = samples.size();
  if (n < 2) fail(errc::empty_input, "differential_entropy_kde: need at least 2 samples");
  if (grid_points < 64) fail(errc::bad_argument, "differential_entropy_kde: need >= 64 grid points");

  auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
  const double mn = *mn_it, mx = *mx_it;
  if (mn == mx) {
    fail(errc::degenerate_sample,
         "differential_entropy_kde: all samples identical; use the discrete estimator");
  }

  double h;
  if (bandwidth) {
    h = *bandwidth;
    if (!(h > 0.0)) fail(errc::bad_argument, "bandwidth must be positive");
  } else {
    double mean = pairwise_sum(samples) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    h = 1.06 * sd * std::pow(static_cast<double>(n), -0.2);
  }

  // Gaussian KDE integrated by trapezoid over [min-4h, max+4h]; the density is
  // floored at 1e-300 before the log so tail nodes cannot produce -inf.
  const double lo = mn - 4.0 * h, hi = mx + 4.0 * h;
  const double dx = (hi - lo) / static_cast<double>(grid_points - 1);
  const double norm = 1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * std::numbers::pi));
  double integral = 0.0;
  double prev = 0.0;
  for (int g = 0; g < grid_points; ++g) {
    const double x = lo + dx * static_cast<double>(g);
    double p = 0.0;
    for (double s : samples) {
      const double u = (x - s) / h;
      p += std::exp(-0.5 * u * u);
    }
    p *= norm;
    const double f = -p * std::log(p < 1e-300 ? 1e-300 : p);
    if (g > 0) integral += 0.5 * dx * (prev + f);
    prev = f;
  }
  return {integral, h};
}

inline std::size_t thread_cap() {
  if (const char* env = std::getenv("ENCORE_KIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace detail

inline double discrete_entropy(std::span<const double> samples,
                               std::optional<double> grid_step = std::nullopt) {
  return detail::discrete_estimate(samples, grid_step).entropy;
}

inline double differential_entropy_kde(std::span<const double> samples,
                                       std::optional<double> bandwidth = std::nullopt,
                                       int grid_points = 1024) {
  return detail::kde_estimate(samples, bandwidth, grid_points).entropy;
}

// Per-rule entropy over all 2M responses (chosen and rejected pooled). Rules
// are estimated in parallel up to ENCORE_KIT_THREADS (or the hardware count);
// every rule writes its own slot, so the result is thread-count independent.
inline EntropyProfile entropy_profile(const RatedDataset& d, EntropyMethod method,
                                      const EntropyOptions& options = {}) {
  validate_dataset(d);
  const std::size_t r = d.rule_count();
  const std::size_t m = d.pair_count();

  EntropyProfile profile;
  profile.method = method;
  profile.per_rule.assign(r, 0.0);
  profile.sample_count = 2 * m;
  if (method == EntropyMethod::discrete) {
    profile.support_sizes.assign(r, 0);
  } else {
    profile.bandwidths.assign(r, 0.0);
  }

  std::vector<std::exception_ptr> errors(r);
  auto run_rule = [&](std::size_t k) {
    try {
      std::vector<double> column;
      column.reserve(2 * m);
      for (const auto& p : d.pairs) column.push_back(p.chosen[k]);
      for (const auto& p : d.pairs) column.push_back(p.rejected[k]);
      if (method == EntropyMethod::discrete) {
        auto est = detail::discrete_estimate(column, options.grid_step);
        profile.per_rule[k] = est.entropy;
        profile.support_sizes[k] = est.support;
      } else {
        auto est = detail::kde_estimate(column, options.bandwidth, options.grid_points);
        profile.per_rule[k] = est.entropy;
        profile.bandwidths[k] = est.bandwidth;
      }
    } catch (const Error& e) {
      errors[k] = std::make_exception_ptr(
          Error(e.code(), "rule " + std::to_string(k) + ": " + e.what()));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  const std::size_t workers = std::min(r, detail::thread_cap());
  if (workers <= 1) {
    for (std::size_t k = 0; k < r; ++k) run_rule(k);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < r; k += workers) run_rule(k);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (std::size_t k = 0; k < r; ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
  }
  return profile;
}

inline void to_json(nlohmann::json& j, const EntropyProfile& p) {
  j = nlohmann::json{
      {"method", p.method == EntropyMethod::discrete ? "discrete" : "differential"},
      {"per_rule", p.per_rule},
      {"sample_count", p.sample_count},
  };
  if (p.method == EntropyMethod::discrete) {
    j["support_sizes"] = p.support_sizes;
  } else {
    j["bandwidths"] = p.bandwidths;
  }
}

inline void from_json(const nlohmann::json& j, EntropyProfile& p) {
  std::string method = j.at("method").get<std::string>();
  if (method == "discrete") {
    p.method = EntropyMethod::discrete;
  } else if (method == "differential") {
    p.method = EntropyMethod::differential;
  } else {
    fail(errc::schema, "unknown entropy method: " + method);
  }
  p.per_rule = j.at("per_rule").get<std::vector<double>>();
  p.sample_count = j.at("sample_count").get<std::size_t>();
  p.support_sizes.clear();
  p.bandwidths.clear();
  if (j.contains("support_sizes")) p.support_sizes = j["support_sizes"].get<std::vector<std::size_t>>();
  if (j.contains("bandwidths")) p.bandwidths = j["bandwidths"].get<std::vector<double>>();
}

}  // namespace encore
