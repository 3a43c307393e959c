#include "encore/evaluator.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "encore/rng.hpp"
#include "encore/synthgen.hpp"
#include "test_util.hpp"

namespace {

using encore::accuracy;
using encore::errc;
using encore::Error;
using encore::pearson;
using encore::TiePolicy;
using encore::WeightVector;

encore::RatedDataset one_rule_dataset(const std::vector<double>& margins) {
  encore::RatedDataset d;
  d.rules = encore::placeholder_rules(1);
  for (std::size_t i = 0; i < margins.size(); ++i) {
    encore::PreferencePair p;
    p.pair_id = "p" + std::to_string(i);
    p.chosen = {0.5 + 0.5 * margins[i]};
    p.rejected = {0.5 - 0.5 * margins[i]};
    d.pairs.push_back(std::move(p));
  }
  return d;
}

TEST(Accuracy, ComponentwiseDominanceIsPerfect) {
  encore::RatedDataset d;
  d.rules = encore::placeholder_rules(3);
  encore::CounterRng rng(61);
  for (int i = 0; i < 50; ++i) {
    encore::PreferencePair p;
    p.pair_id = "p" + std::to_string(i);
    for (int k = 0; k < 3; ++k) {
      double lo = rng.next_unit() * 0.4;
      p.rejected.push_back(lo);
      p.chosen.push_back(lo + 0.1 + rng.next_unit() * 0.4);
    }
    d.pairs.push_back(std::move(p));
  }
  for (const auto& w : {encore::uniform_weights(3), encore::single_rule_weights(3, 1),
                        encore::dirichlet_weights(3, 5)}) {
    const auto rep = accuracy(d, w);
    EXPECT_DOUBLE_EQ(rep.overall_accuracy, 1.0) << w.scheme;
    EXPECT_EQ(rep.tie_count, 0u);
  }
}

TEST(Accuracy, AllTiesSplitByPolicy) {
  encore::RatedDataset d;
  d.rules = encore::placeholder_rules(2);
  for (int i = 0; i < 8; ++i) {
    encore::PreferencePair p;
    p.pair_id = "p" + std::to_string(i);
    p.chosen = {0.3, 0.7};
    p.rejected = {0.3, 0.7};
    d.pairs.push_back(std::move(p));
  }
  const auto w = encore::uniform_weights(2);
  const auto half = accuracy(d, w, TiePolicy::half);
  const auto zero = accuracy(d, w, TiePolicy::zero);
  EXPECT_DOUBLE_EQ(half.overall_accuracy, 0.5);
  EXPECT_DOUBLE_EQ(zero.overall_accuracy, 0.0);
  EXPECT_EQ(half.tie_count, 8u);
  EXPECT_EQ(zero.tie_count, 8u);
}

TEST(Accuracy, KnownMarginsGiveThreeQuarters) {
  const auto d = one_rule_dataset({0.2, 0.1, -0.3, 0.05});
  const auto rep = accuracy(d, encore::uniform_weights(1));
  EXPECT_DOUBLE_EQ(rep.overall_accuracy, 0.75);
  EXPECT_EQ(rep.per_category.at("default").count, 4u);
}

TEST(Accuracy, TwoPairsSplit) {
  const auto d = one_rule_dataset({0.4, -0.4});
  EXPECT_DOUBLE_EQ(accuracy(d, encore::uniform_weights(1)).overall_accuracy, 0.5);
}

TEST(Accuracy, PerRuleMatchesSingleRuleWeights) {
  const auto d = testutil::random_dataset(4, 300, 62);
  const auto per_rule = encore::per_rule_accuracy(d);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto rep = accuracy(d, encore::single_rule_weights(4, k));
    EXPECT_DOUBLE_EQ(per_rule[k], rep.overall_accuracy) << "rule " << k;
  }
}

TEST(Accuracy, ConstantRuleScoresHalfUnderHalfPolicy) {
  encore::RatedDataset d;
  d.rules = encore::placeholder_rules(2);
  encore::CounterRng rng(63);
  for (int i = 0; i < 40; ++i) {
    encore::PreferencePair p;
    p.pair_id = "p" + std::to_string(i);
    p.chosen = {0.6, std::floor(rng.next_unit() * 11.0) / 10.0};
    p.rejected = {0.6, std::floor(rng.next_unit() * 11.0) / 10.0};
    d.pairs.push_back(std::move(p));
  }
  const auto per_rule_half = encore::per_rule_accuracy(d, TiePolicy::half);
  const auto per_rule_zero = encore::per_rule_accuracy(d, TiePolicy::zero);
  EXPECT_DOUBLE_EQ(per_rule_half[0], 0.5);
  EXPECT_DOUBLE_EQ(per_rule_zero[0], 0.0);
}

TEST(Accuracy, OverallIsCountWeightedCategoryMean) {
  const auto d = testutil::random_dataset(3, 211, 64, 3);
  const auto rep = accuracy(d, encore::uniform_weights(3));
  double weighted = 0.0;
  std::size_t total = 0;
  for (const auto& [name, cat] : rep.per_category) {
    weighted += cat.accuracy * static_cast<double>(cat.count);
    total += cat.count;
  }
  EXPECT_EQ(total, d.pair_count());
  EXPECT_NEAR(rep.overall_accuracy, weighted / static_cast<double>(total), 1e-12);
}

TEST(Accuracy, HalfPolicyDominatesZeroPolicy) {
  for (std::uint64_t seed : {65u, 66u, 67u}) {
    const auto d = testutil::random_dataset(2, 150, seed);
    const auto w = encore::uniform_weights(2);
    const auto half = accuracy(d, w, TiePolicy::half);
    const auto zero = accuracy(d, w, TiePolicy::zero);
    EXPECT_GE(half.overall_accuracy, zero.overall_accuracy);
    if (half.tie_count == 0) {
      EXPECT_DOUBLE_EQ(half.overall_accuracy, zero.overall_accuracy);
    } else {
      EXPECT_GT(half.overall_accuracy, zero.overall_accuracy);
    }
  }
}

TEST(Accuracy, DimensionMismatchThrows) {
  const auto d = testutil::random_dataset(3, 5, 68);
  EXPECT_THROW(accuracy(d, encore::uniform_weights(4)), Error);
}

TEST(Pearson, PerfectCorrelation) {
  std::vector<double> x{1.0, 2.0, 3.0};
  std::vector<double> y{2.0, 4.0, 6.0};
  const auto res = pearson(x, y);
  EXPECT_DOUBLE_EQ(res.r, 1.0);
  EXPECT_EQ(res.p_value, 0.0);
  EXPECT_EQ(res.n, 3u);
  std::vector<double> neg{-2.0, -4.0, -6.0};
  EXPECT_DOUBLE_EQ(pearson(x, neg).r, -1.0);
}

TEST(Pearson, FrozenPValues) {
  // Student-t two-sided tails for the correlation test at n=10 (nu=8).
  auto p_of_r = [](double r, double n) {
    const double nu = n - 2.0;
    const double t = r * std::sqrt(nu / ((1.0 - r) * (1.0 + r)));
    return encore::t_test_p_two_sided(t, nu);
  };
  const double p96 = p_of_r(-0.96, 10.0);
  const double p84 = p_of_r(-0.84, 10.0);
  EXPECT_NEAR(p96, 1.067131e-5, 1.067131e-5 * 1e-4);
  EXPECT_NEAR(p84, 2.352559e-3, 2.352559e-3 * 1e-4);
  // And the coarser sanity window: within a factor of two of 1.1e-5 / 2.3e-3.
  EXPECT_GT(p96, 1.1e-5 / 2.0);
  EXPECT_LT(p96, 1.1e-5 * 2.0);
  EXPECT_GT(p84, 2.3e-3 / 2.0);
  EXPECT_LT(p84, 2.3e-3 * 2.0);
}

TEST(Pearson, SymmetricInArguments) {
  std::vector<double> x{0.3, 1.7, 0.9, 2.4, 1.1};
  std::vector<double> y{4.0, 2.2, 3.1, 0.7, 2.9};
  EXPECT_DOUBLE_EQ(pearson(x, y).r, pearson(y, x).r);
  EXPECT_DOUBLE_EQ(pearson(x, y).p_value, pearson(y, x).p_value);
}

TEST(Pearson, AffineInvariance) {
  encore::CounterRng rng(69);
  std::vector<double> x, y, y_pos, y_neg;
  for (int i = 0; i < 24; ++i) {
    x.push_back(rng.next_unit());
    y.push_back(rng.next_unit() + 0.4 * x.back());
    y_pos.push_back(2.5 * y.back() + 7.0);
    y_neg.push_back(-1.3 * y.back() + 2.0);
  }
  const auto base = pearson(x, y);
  EXPECT_NEAR(pearson(x, y_pos).r, base.r, 1e-12);
  EXPECT_NEAR(pearson(x, y_neg).r, -base.r, 1e-12);
  EXPECT_NEAR(pearson(x, y_neg).p_value, base.p_value, 1e-12);
}

TEST(Pearson, DomainErrors) {
  std::vector<double> two{1.0, 2.0};
  std::vector<double> also_two{1.0, 2.0};
  try {
    pearson(two, also_two);
    FAIL() << "expected bad_argument";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::bad_argument);
  }
  std::vector<double> x{1.0, 2.0, 3.0};
  std::vector<double> short_y{1.0, 2.0};
  try {
    pearson(x, short_y);
    FAIL() << "expected dimension_mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::dimension_mismatch);
  }
  std::vector<double> flat{2.0, 2.0, 2.0};
  std::vector<double> vary{1.0, 2.0, 3.0};
  try {
    pearson(flat, vary, "entropy", "accuracy");
    FAIL() << "expected degenerate_sample";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::degenerate_sample);
    EXPECT_NE(std::string(e.what()).find("entropy"), std::string::npos);
  }
  try {
    pearson(vary, flat, "entropy", "accuracy");
    FAIL() << "expected degenerate_sample";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("accuracy"), std::string::npos);
  }
}

// Independent oracle for the t-tail: Simpson integration of the Student-t
// density with lgamma normalization, far from the continued-fraction code path.
double t_tail_simpson(double t, double nu) {
  const double a = std::fabs(t);
  const double log_norm = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                          0.5 * std::log(nu * std::acos(-1.0));
  auto density = [&](double s) {
    return std::exp(log_norm - 0.5 * (nu + 1.0) * std::log1p(s * s / nu));
  };
  auto simpson = [&](double lo, double hi, int intervals) {
    const double h = (hi - lo) / intervals;
    double acc = density(lo) + density(hi);
    for (int i = 1; i < intervals; ++i) {
      acc += density(lo + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
  };
  double integral = simpson(a, 50.0, 200000) + simpson(50.0, 2000.0, 100000);
  return 2.0 * integral;
}

TEST(Pearson, ContinuedFractionMatchesSimpsonOracle) {
  for (double r : {-0.96, -0.84, -0.5, -0.3, 0.2, 0.6, 0.9}) {
    for (double n : {5.0, 10.0, 30.0}) {
      const double nu = n - 2.0;
      const double t = r * std::sqrt(nu / ((1.0 - r) * (1.0 + r)));
      const double p_cf = encore::t_test_p_two_sided(t, nu);
      const double p_oracle = t_tail_simpson(t, nu);
      EXPECT_NEAR(p_cf, p_oracle, 1e-8) << "r=" << r << " n=" << n;
    }
  }
}

TEST(EntropyAccuracyCorrelation, GradedSuiteIsStronglyNegative) {
  for (std::uint64_t seed : {0u, 1u}) {
    const auto d = encore::graded_rater_suite(10, 0.02, 0.6, 10000, seed);
    const auto res = encore::entropy_accuracy_correlation(d);
    EXPECT_LE(res.r, -0.8) << "seed " << seed;
    EXPECT_LT(res.p_value, 0.01) << "seed " << seed;
    EXPECT_EQ(res.n, 10u);
    EXPECT_EQ(res.x_label, "entropy");
    EXPECT_EQ(res.y_label, "accuracy");
  }
}

TEST(EntropyAccuracyCorrelation, IdenticalRulesDegenerate) {
  encore::RatedDataset d;
  d.rules = encore::placeholder_rules(3);
  encore::CounterRng rng(70);
  for (int i = 0; i < 60; ++i) {
    encore::PreferencePair p;
    p.pair_id = "p" + std::to_string(i);
    const double c = std::floor(rng.next_unit() * 11.0) / 10.0;
    const double r = std::floor(rng.next_unit() * 11.0) / 10.0;
    p.chosen = {c, c, c};
    p.rejected = {r, r, r};
    d.pairs.push_back(std::move(p));
  }
  try {
    encore::entropy_accuracy_correlation(d);
    FAIL() << "expected degenerate_sample";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::degenerate_sample);
  }
}

TEST(EntropyAccuracyCorrelation, RulePermutationInvariant) {
  const auto d = encore::graded_rater_suite(6, 0.05, 0.5, 2000, 3);
  auto permuted = d;
  const std::vector<std::size_t> perm{4, 2, 0, 5, 1, 3};
  for (auto& p : permuted.pairs) {
    encore::ScoreVector c(6), r(6);
    for (std::size_t k = 0; k < 6; ++k) {
      c[k] = p.chosen[perm[k]];
      r[k] = p.rejected[perm[k]];
    }
    p.chosen = c;
    p.rejected = r;
  }
  const auto a = encore::entropy_accuracy_correlation(d);
  const auto b = encore::entropy_accuracy_correlation(permuted);
  EXPECT_NEAR(a.r, b.r, 1e-12);
}

TEST(CompareSchemes, IdenticalRulesMakeAllSchemesEqual) {
  encore::RatedDataset d;
  d.rules = encore::placeholder_rules(4);
  encore::CounterRng rng(71);
  for (int i = 0; i < 80; ++i) {
    encore::PreferencePair p;
    p.pair_id = "p" + std::to_string(i);
    const double c = std::floor(rng.next_unit() * 11.0) / 10.0;
    const double r = std::floor(rng.next_unit() * 11.0) / 10.0;
    p.chosen.assign(4, c);
    p.rejected.assign(4, r);
    d.pairs.push_back(std::move(p));
  }
  const auto rows = encore::compare_schemes(
      d, {"encore", "uniform", "topk", "single", "dirichlet", "random_subset"}, 2.0, 2, {1, 2, 3});
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.overall_accuracy, rows[0].overall_accuracy, 1e-12) << row.scheme;
  }
}

TEST(CompareSchemes, SingleAveragesPickedRules) {
  const auto d = testutil::random_dataset(5, 200, 72);
  const std::vector<std::uint64_t> seeds{4, 9, 23};
  const auto rows = encore::compare_schemes(d, {"single"}, 2.0, 2, seeds);
  ASSERT_EQ(rows.size(), 1u);
  const auto per_rule = encore::per_rule_accuracy(d);
  double expected = 0.0;
  for (auto seed : seeds) {
    auto idx = static_cast<std::size_t>(encore::CounterRng(seed).unit_at(0) * 5.0);
    if (idx >= 5) idx = 4;
    expected += per_rule[idx];
  }
  expected /= static_cast<double>(seeds.size());
  EXPECT_NEAR(rows[0].overall_accuracy, expected, 1e-12);
  EXPECT_EQ(rows[0].params.at("rules").size(), seeds.size());
}

TEST(CompareSchemes, EncoreBeatsUniformWithNoiseRule) {
  auto cfg = encore::graded_rater_config(10, 0.02, 0.6, 4000, 11);
  encore::RaterConfig noise;
  noise.rule_index = 10;
  noise.d = 0.0;
  noise.sigma = 0.6;
  noise.grid_step = 0.1;
  noise.mu = 0.9;
  cfg.raters.push_back(noise);
  const auto d = encore::generate(cfg);
  const auto rows = encore::compare_schemes(d, {"encore", "uniform"}, 2.0, 5, {1});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_GE(rows[0].overall_accuracy, rows[1].overall_accuracy);
}

TEST(CompareSchemes, UnknownSchemeThrows) {
  const auto d = testutil::random_dataset(3, 10, 73);
  try {
    encore::compare_schemes(d, {"magic"}, 2.0, 2, {1});
    FAIL() << "expected bad_argument";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::bad_argument);
  }
  EXPECT_THROW(encore::compare_schemes(d, {"encore"}, 2.0, 2, {}), Error);
}

TEST(DecisionInvariance, PositiveRescalePreservesEveryDecision) {
  encore::CounterRng rng(74);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = testutil::random_dataset(1 + trial % 6, 30, 7000 + trial);
    const std::size_t r = d.rule_count();
    auto w = encore::dirichlet_weights(r, 400 + trial);
    for (double c : {2.0, 3.7, 0.25}) {
      WeightVector scaled = w;
      double sum = 0.0;
      for (double& x : scaled.weights) {
        x *= c;
        sum += x;
      }
      for (double& x : scaled.weights) x /= sum;
      for (const auto& p : d.pairs) {
        const double m1 = encore::compose(w, p.chosen) - encore::compose(w, p.rejected);
        const double m2 = encore::compose(scaled, p.chosen) - encore::compose(scaled, p.rejected);
        EXPECT_EQ(m1 > 0.0, m2 > 0.0);
        EXPECT_EQ(m1 == 0.0, m2 == 0.0);
      }
    }
  }
}

TEST(Reports, JsonShapes) {
  const auto d = testutil::random_dataset(2, 20, 75, 2);
  const auto rep = accuracy(d, encore::uniform_weights(2));
  nlohmann::json j = rep;
  EXPECT_TRUE(j.contains("scheme"));
  EXPECT_TRUE(j.contains("weights"));
  EXPECT_TRUE(j.contains("overall_accuracy"));
  EXPECT_TRUE(j.contains("per_category"));
  EXPECT_TRUE(j.contains("per_rule_accuracy"));
  EXPECT_TRUE(j.contains("tie_count"));
  EXPECT_EQ(j["per_category"].size(), 2u);

  const auto rows = encore::compare_schemes(d, {"uniform"}, 2.0, 1, {1});
  nlohmann::json jr = rows[0];
  EXPECT_EQ(jr.at("scheme").get<std::string>(), "uniform");
  EXPECT_TRUE(jr.contains("overall_accuracy"));

  std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  std::vector<double> y{1.1, 1.9, 3.2, 3.8};
  nlohmann::json jc = pearson(x, y, "entropy", "accuracy");
  EXPECT_EQ(jc.at("x_label").get<std::string>(), "entropy");
  EXPECT_EQ(jc.at("n").get<std::size_t>(), 4u);
}

}  // namespace
