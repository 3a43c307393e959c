#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "encore/composer.hpp"
#include "encore/dataset.hpp"
#include "encore/entropy.hpp"
#include "encore/error.hpp"
#include "encore/rng.hpp"
#include "encore/stats.hpp"

namespace encore {

// `half` credits exact composed-score ties with 1/2; `zero` counts them as
// wrong, which is the strict-inequality reading of pairwise accuracy.
enum class TiePolicy { half, zero };

inline TiePolicy tie_policy_from_string(const std::string& s) {
  if (s == "half") return TiePolicy::half;
  if (s == "zero") return TiePolicy::zero;
  fail(errc::bad_argument, "unknown tie policy: " + s);
}

struct CategoryAccuracy {
  double accuracy = 0.0;
  std::size_t count = 0;
};

struct EvaluationReport {
  std::string scheme;
  WeightVector weights;
  double overall_accuracy = 0.0;
  std::map<std::string, CategoryAccuracy> per_category;
  std::vector<double> per_rule_accuracy;
  std::size_t tie_count = 0;
};

namespace detail {

struct Tally {
  std::size_t wins = 0;
  std::size_t ties = 0;
  std::size_t count = 0;

  double accuracy(TiePolicy tie) const {
    double credit = static_cast<double>(wins);
    if (tie == TiePolicy::half) credit += 0.5 * static_cast<double>(ties);
    return credit / static_cast<double>(count);
  }
};

}  // namespace detail

// Accuracy of the one-hot weighting for each rule.
inline std::vector<double> per_rule_accuracy(const RatedDataset& d,
                                             TiePolicy tie = TiePolicy::half) {
  validate_dataset(d);
  const std::size_t r = d.rule_count();
  std::vector<detail::Tally> tallies(r);
  for (const auto& p : d.pairs) {
    for (std::size_t k = 0; k < r; ++k) {
      double margin = p.chosen[k] - p.rejected[k];
      ++tallies[k].count;
      if (margin > 0.0) ++tallies[k].wins;
      else if (margin == 0.0) ++tallies[k].ties;
    }
  }
  std::vector<double> out(r);
  for (std::size_t k = 0; k < r; ++k) out[k] = tallies[k].accuracy(tie);
  return out;
}

// Fraction of pairs whose composed chosen reward beats the rejected one,
// tallied per category; the overall number is the count-weighted mean of the
// category accuracies, which equals the plain pooled fraction.
inline EvaluationReport accuracy(const RatedDataset& d, const WeightVector& w,
                                 TiePolicy tie = TiePolicy::half) {
  validate_dataset(d);
  if (w.weights.size() != d.rule_count()) {
    fail(errc::dimension_mismatch, "accuracy: weight size " + std::to_string(w.weights.size()) +
                                       " vs " + std::to_string(d.rule_count()) + " rules");
  }
  std::map<std::string, detail::Tally> tallies;
  std::size_t ties_total = 0;
  for (const auto& p : d.pairs) {
    double margin = compose(w, p.chosen) - compose(w, p.rejected);
    auto& t = tallies[p.category];
    ++t.count;
    if (margin > 0.0) ++t.wins;
    else if (margin == 0.0) {
      ++t.ties;
      ++ties_total;
    }
  }
  EvaluationReport report;
  report.scheme = w.scheme;
  report.weights = w;
  report.tie_count = ties_total;
  report.per_rule_accuracy = per_rule_accuracy(d, tie);
  double weighted = 0.0;
  for (const auto& [name, t] : tallies) {
    double acc = t.accuracy(tie);
    report.per_category[name] = {acc, t.count};
    weighted += acc * static_cast<double>(t.count);
  }
  report.overall_accuracy = weighted / static_cast<double>(d.pair_count());
  return report;
}

// Pearson correlation between per-rule entropy and per-rule accuracy; the sign
// convention keeps entropy (not negative entropy) on x, so reliable-rules-win
// shows up as negative r.
inline CorrelationResult entropy_accuracy_correlation(const RatedDataset& d,
                                                      EntropyMethod method = EntropyMethod::discrete,
                                                      const EntropyOptions& options = {},
                                                      TiePolicy tie = TiePolicy::half) {
  EntropyProfile profile = entropy_profile(d, method, options);
  std::vector<double> acc = per_rule_accuracy(d, tie);
  return pearson(profile.per_rule, acc, "entropy", "accuracy");
}

struct SchemeRow {
  std::string scheme;
  nlohmann::json params = nlohmann::json::object();
  double overall_accuracy = 0.0;
  std::map<std::string, CategoryAccuracy> per_category;
};

namespace detail {

inline SchemeRow averaged_row(const std::string& scheme, const nlohmann::json& params,
                              const std::vector<EvaluationReport>& reports) {
  SchemeRow row;
  row.scheme = scheme;
  row.params = params;
  for (const auto& rep : reports) {
    row.overall_accuracy += rep.overall_accuracy;
    for (const auto& [name, cat] : rep.per_category) {
      auto& slot = row.per_category[name];
      slot.accuracy += cat.accuracy;
      slot.count = cat.count;
    }
  }
  const double n = static_cast<double>(reports.size());
  row.overall_accuracy /= n;
  for (auto& [name, cat] : row.per_category) cat.accuracy /= n;
  return row;
}

}  // namespace detail

// One row per scheme on the same dataset. Deterministic schemes evaluate once;
// single-rule and dirichlet average their random trials over the given seeds.
inline std::vector<SchemeRow> compare_schemes(const RatedDataset& d,
                                              const std::vector<std::string>& schemes,
                                              double tau, std::size_t k,
                                              const std::vector<std::uint64_t>& seeds,
                                              TiePolicy tie = TiePolicy::half) {
  validate_dataset(d);
  if (seeds.empty()) fail(errc::bad_argument, "compare_schemes: need at least one seed");
  const std::size_t r = d.rule_count();
  EntropyProfile profile = entropy_profile(d, EntropyMethod::discrete);

  std::vector<SchemeRow> rows;
  for (const auto& scheme : schemes) {
    if (scheme == "encore") {
      auto rep = accuracy(d, encore_weights(profile, tau), tie);
      rows.push_back(detail::averaged_row(scheme, {{"tau", tau}}, {rep}));
    } else if (scheme == "uniform") {
      auto rep = accuracy(d, uniform_weights(r), tie);
      rows.push_back(detail::averaged_row(scheme, nlohmann::json::object(), {rep}));
    } else if (scheme == "topk") {
      auto w = topk_weights(profile, k);
      auto rep = accuracy(d, w, tie);
      rows.push_back(detail::averaged_row(scheme, w.params, {rep}));
    } else if (scheme == "single") {
      std::vector<EvaluationReport> reps;
      std::vector<std::size_t> picked;
      for (auto seed : seeds) {
        CounterRng rng(seed);
        auto idx = static_cast<std::size_t>(rng.unit_at(0) * static_cast<double>(r));
        if (idx >= r) idx = r - 1;
        picked.push_back(idx);
        reps.push_back(accuracy(d, single_rule_weights(r, idx), tie));
      }
      rows.push_back(detail::averaged_row(scheme, {{"seeds", seeds}, {"rules", picked}}, reps));
    } else if (scheme == "dirichlet") {
      std::vector<EvaluationReport> reps;
      for (auto seed : seeds) reps.push_back(accuracy(d, dirichlet_weights(r, seed), tie));
      rows.push_back(detail::averaged_row(scheme, {{"seeds", seeds}}, reps));
    } else if (scheme == "random_subset") {
      std::vector<EvaluationReport> reps;
      for (auto seed : seeds) reps.push_back(accuracy(d, random_subset_weights(r, k, seed), tie));
      rows.push_back(detail::averaged_row(scheme, {{"k", k}, {"seeds", seeds}}, reps));
    } else {
      fail(errc::bad_argument, "unknown scheme: " + scheme);
    }
  }
  return rows;
}

inline void to_json(nlohmann::json& j, const CategoryAccuracy& c) {
  j = nlohmann::json{{"accuracy", c.accuracy}, {"count", c.count}};
}

inline void to_json(nlohmann::json& j, const EvaluationReport& r) {
  j = nlohmann::json{
      {"scheme", r.scheme},
      {"weights", r.weights},
      {"overall_accuracy", r.overall_accuracy},
      {"per_category", r.per_category},
      {"per_rule_accuracy", r.per_rule_accuracy},
      {"tie_count", r.tie_count},
  };
}

inline void to_json(nlohmann::json& j, const CorrelationResult& c) {
  j = nlohmann::json{
      {"r", c.r}, {"p_value", c.p_value}, {"n", c.n},
      {"x_label", c.x_label}, {"y_label", c.y_label},
  };
}

inline void to_json(nlohmann::json& j, const SchemeRow& row) {
  j = nlohmann::json{
      {"scheme", row.scheme},
      {"params", row.params},
      {"overall_accuracy", row.overall_accuracy},
      {"per_category", row.per_category},
  };
}

}  // namespace encore
