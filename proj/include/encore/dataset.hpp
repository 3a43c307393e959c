#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "encore/error.hpp"

namespace encore {

struct RuleSpec {
  int index = 0;
  std::string title;
  std::string description;
  std::string preference_rule;
  std::string rating_rule;
};

// Position k holds rule k's rating in [0,1].
using ScoreVector = std::vector<double>;

struct PreferencePair {
  std::string pair_id;
  std::string prompt;              // may be empty
  std::string category = "default";
  ScoreVector chosen;
  ScoreVector rejected;
};

struct RatedDataset {
  std::vector<RuleSpec> rules;
  std::vector<PreferencePair> pairs;

  std::size_t rule_count() const { return rules.size(); }
  std::size_t pair_count() const { return pairs.size(); }
};

// Stand-in metadata when a dataset arrives without a catalog.
inline std::vector<RuleSpec> placeholder_rules(std::size_t r) {
  std::vector<RuleSpec> rules;
  rules.reserve(r);
  for (std::size_t k = 0; k < r; ++k) {
    rules.push_back({static_cast<int>(k), "rule " + std::to_string(k), "", "", ""});
  }
  return rules;
}

// Catalogs must have unique, contiguous indices starting at 0 and nonempty titles.
inline void validate_catalog(const std::vector<RuleSpec>& rules) {
  if (rules.empty()) fail(errc::schema, "rule catalog is empty");
  std::vector<bool> seen(rules.size(), false);
  for (const auto& r : rules) {
    if (r.index < 0 || static_cast<std::size_t>(r.index) >= rules.size()) {
      fail(errc::schema, "rule index " + std::to_string(r.index) + " not contiguous from 0");
    }
    if (seen[static_cast<std::size_t>(r.index)]) {
      fail(errc::schema, "duplicate rule index " + std::to_string(r.index));
    }
    seen[static_cast<std::size_t>(r.index)] = true;
    if (r.title.empty()) fail(errc::schema, "rule " + std::to_string(r.index) + " has empty title");
  }
}

inline void validate_dataset(const RatedDataset& d) {
  validate_catalog(d.rules);
  if (d.pairs.empty()) fail(errc::empty_input, "dataset has no pairs");
  const std::size_t r = d.rule_count();
  for (const auto& p : d.pairs) {
    if (p.chosen.size() != r || p.rejected.size() != r) {
      fail(errc::schema, "pair " + p.pair_id + ": expected " + std::to_string(r) +
                             " scores, got chosen=" + std::to_string(p.chosen.size()) +
                             " rejected=" + std::to_string(p.rejected.size()));
    }
    for (std::size_t k = 0; k < r; ++k) {
      for (double s : {p.chosen[k], p.rejected[k]}) {
        if (!(s >= 0.0 && s <= 1.0)) {
          fail(errc::schema, "pair " + p.pair_id + ", rule " + std::to_string(k) +
                                 ": score " + std::to_string(s) + " outside [0,1]");
        }
      }
    }
  }
}

// The 2M response-level score vectors: all chosen first (in pair order), then
// all rejected. Entropy estimation pools both sides.
inline std::vector<ScoreVector> flatten_responses(const RatedDataset& d) {
  if (d.pairs.empty()) fail(errc::empty_input, "dataset has no pairs");
  std::vector<ScoreVector> out;
  out.reserve(2 * d.pairs.size());
  for (const auto& p : d.pairs) out.push_back(p.chosen);
  for (const auto& p : d.pairs) out.push_back(p.rejected);
  return out;
}

}  // namespace encore
