#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "encore/composer.hpp"
#include "encore/dataset.hpp"
#include "encore/error.hpp"
#include "encore/numeric.hpp"
#include "encore/rng.hpp"

namespace encore {

// Row i holds the per-rule score margins of one pair; labels[i] in {+1,-1}
// says which side is actually preferred. Margins stay in [-1,1] because the
// underlying scores live in [0,1].
struct MarginMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> margins;  // row-major rows x cols
  std::vector<double> labels;

  double at(std::size_t i, std::size_t k) const { return margins[i * cols + k]; }
};

// Pairs from a rated dataset, labels all +1 (chosen really is preferred).
inline MarginMatrix margin_matrix(const RatedDataset& d) {
  validate_dataset(d);
  MarginMatrix mm;
  mm.rows = d.pair_count();
  mm.cols = d.rule_count();
  mm.margins.reserve(mm.rows * mm.cols);
  for (const auto& p : d.pairs) {
    for (std::size_t k = 0; k < mm.cols; ++k) mm.margins.push_back(p.chosen[k] - p.rejected[k]);
  }
  mm.labels.assign(mm.rows, 1.0);
  return mm;
}

inline double bt_loss(double z, double g) {
  if (z != 1.0 && z != -1.0) fail(errc::bad_argument, "bt_loss: label must be +1 or -1");
  return log1p_exp(-z * g);
}

namespace detail {

// One exp serves both the loss log(1+e^y) and D = -z*sigma(y), y = -z*g.
inline std::pair<double, double> bt_loss_and_d(double z, double g) {
  const double y = -z * g;
  if (y > 0.0) {
    const double e = std::exp(-y);
    return {y + std::log1p(e), -z / (1.0 + e)};
  }
  const double e = std::exp(y);
  return {std::log1p(e), -z * e / (1.0 + e)};
}

inline void check_dims(const std::vector<double>& w, const MarginMatrix& mm) {
  if (w.size() != mm.cols) {
    fail(errc::dimension_mismatch, "weights have " + std::to_string(w.size()) +
                                       " entries, margin matrix has " + std::to_string(mm.cols) +
                                       " columns");
  }
  if (mm.labels.size() != mm.rows) {
    fail(errc::dimension_mismatch, "margin matrix has " + std::to_string(mm.rows) +
                                       " rows but " + std::to_string(mm.labels.size()) + " labels");
  }
}

}  // namespace detail

// Sum over samples of log(1+exp(-z_i * <w, margins_i>)). Per-sample terms are
// pairwise summed so the value is independent of any work partitioning.
inline double total_loss(const std::vector<double>& w, const MarginMatrix& mm) {
  detail::check_dims(w, mm);
  std::vector<double> terms(mm.rows);
  for (std::size_t i = 0; i < mm.rows; ++i) {
    double g = 0.0;
    for (std::size_t k = 0; k < mm.cols; ++k) g += w[k] * mm.at(i, k);
    terms[i] = bt_loss(mm.labels[i], g);
  }
  return pairwise_sum(terms);
}

// dL/dw_k = sum_i D_i * margin_ik with D_i = -z_i * sigma(-z_i * g_i); every
// |D_i| <= 1, so each component is bounded by sum |margin_ik|.
inline std::vector<double> grad_weights(const std::vector<double>& w, const MarginMatrix& mm) {
  detail::check_dims(w, mm);
  std::vector<double> d(mm.rows);
  for (std::size_t i = 0; i < mm.rows; ++i) {
    double g = 0.0;
    for (std::size_t k = 0; k < mm.cols; ++k) g += w[k] * mm.at(i, k);
    d[i] = detail::bt_loss_and_d(mm.labels[i], g).second;
  }
  std::vector<double> grad(mm.cols);
  std::vector<double> col(mm.rows);
  for (std::size_t k = 0; k < mm.cols; ++k) {
    for (std::size_t i = 0; i < mm.rows; ++i) col[i] = d[i] * mm.at(i, k);
    grad[k] = pairwise_sum(col);
  }
  return grad;
}

enum class Constraint { unconstrained, simplex_projected };

struct OptimizerTrace {
  std::vector<double> initial_weights;
  std::vector<double> final_weights;
  std::vector<double> loss_history;           // mean per-sample loss; steps+1 entries
  std::vector<double> gradient_norm_history;  // L2 norm of the mean gradient; steps entries
  std::size_t steps = 0;
  double learning_rate = 0.0;
  Constraint constraint = Constraint::unconstrained;
};

// Full-batch descent on the mean loss: w <- w - lr * grad/M, optionally
// followed by Euclidean projection onto the simplex. Stepping on the mean
// keeps the default rate meaningful at any M.
inline OptimizerTrace optimize_weights(const MarginMatrix& mm, std::vector<double> init,
                                       double lr = 0.05, std::size_t steps = 2000,
                                       Constraint constraint = Constraint::unconstrained) {
  detail::check_dims(init, mm);
  if (!(lr > 0.0)) fail(errc::bad_argument, "optimize_weights: learning rate must be positive");
  if (steps < 1) fail(errc::bad_argument, "optimize_weights: need at least one step");
  if (mm.rows == 0) fail(errc::empty_input, "optimize_weights: empty margin matrix");

  const double m = static_cast<double>(mm.rows);
  OptimizerTrace trace;
  trace.initial_weights = init;
  trace.steps = steps;
  trace.learning_rate = lr;
  trace.constraint = constraint;
  trace.loss_history.reserve(steps + 1);
  trace.gradient_norm_history.reserve(steps);

  std::vector<double> w = std::move(init);
  std::vector<double> terms(mm.rows), d(mm.rows), col(mm.rows), grad(mm.cols);

  auto eval = [&](bool with_grad) {
    for (std::size_t i = 0; i < mm.rows; ++i) {
      double g = 0.0;
      for (std::size_t k = 0; k < mm.cols; ++k) g += w[k] * mm.at(i, k);
      auto [loss, di] = detail::bt_loss_and_d(mm.labels[i], g);
      terms[i] = loss;
      d[i] = di;
    }
    double loss = pairwise_sum(terms) / m;
    if (!std::isfinite(loss)) {
      fail(errc::non_finite, "optimize_weights: loss diverged; lower the learning rate");
    }
    trace.loss_history.push_back(loss);
    if (!with_grad) return;
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < mm.cols; ++k) {
      for (std::size_t i = 0; i < mm.rows; ++i) col[i] = d[i] * mm.at(i, k);
      grad[k] = pairwise_sum(col) / m;
      norm_sq += grad[k] * grad[k];
    }
    trace.gradient_norm_history.push_back(std::sqrt(norm_sq));
  };

  for (std::size_t t = 0; t < steps; ++t) {
    eval(true);
    for (std::size_t k = 0; k < mm.cols; ++k) w[k] -= lr * grad[k];
    if (constraint == Constraint::simplex_projected) w = project_to_simplex(std::move(w));
  }
  eval(false);
  trace.final_weights = w;
  return trace;
}

struct Theorem1Report {
  std::size_t informative = 0;
  std::size_t entropic = 0;
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
  double lr = 0.05;
  std::size_t steps = 2000;
  std::vector<double> final_weights;
  std::vector<double> grad0;  // per-rule |gradient| at the zero init
  double ratio = 0.0;         // max |entropic weight| / mean informative weight
};

// Synthetic check that a label-independent, zero-mean rule ends up with
// negligible weight. Informative rules agree with the label with probability
// 0.8 at margin 0.5; entropic rules are a fair +-0.5 coin regardless of the
// label. Counter layout: sample i draws label at i*(R+1), rule k at i*(R+1)+1+k.
inline Theorem1Report theorem1_harness(std::size_t informative, std::size_t entropic,
                                       std::size_t pairs, std::uint64_t seed, double lr = 0.05,
                                       std::size_t steps = 2000) {
  if (informative < 1 || entropic < 1 || pairs < 1) {
    fail(errc::bad_argument, "theorem1_harness: all counts must be >= 1");
  }
  const std::size_t r = informative + entropic;
  const double d_gap = 0.5;

  CounterRng rng(seed);
  MarginMatrix mm;
  mm.rows = pairs;
  mm.cols = r;
  mm.margins.resize(pairs * r);
  mm.labels.resize(pairs);
  const std::uint64_t stride = r + 1;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::uint64_t base = i * stride;
    const double z = rng.unit_at(base) < 0.5 ? 1.0 : -1.0;
    mm.labels[i] = z;
    for (std::size_t k = 0; k < r; ++k) {
      const double u = rng.unit_at(base + 1 + k);
      double margin;
      if (k < informative) {
        margin = z * d_gap * (u < 0.8 ? 1.0 : -1.0);
      } else {
        margin = u < 0.5 ? d_gap : -d_gap;
      }
      mm.margins[i * r + k] = margin;
    }
  }

  Theorem1Report report;
  report.informative = informative;
  report.entropic = entropic;
  report.pairs = pairs;
  report.seed = seed;
  report.lr = lr;
  report.steps = steps;

  std::vector<double> zeros(r, 0.0);
  report.grad0 = grad_weights(zeros, mm);
  for (double& g : report.grad0) g = std::fabs(g);

  auto trace = optimize_weights(mm, zeros, lr, steps, Constraint::unconstrained);
  report.final_weights = trace.final_weights;

  double max_entropic = 0.0;
  for (std::size_t k = informative; k < r; ++k) {
    max_entropic = std::max(max_entropic, std::fabs(report.final_weights[k]));
  }
  double mean_informative = 0.0;
  for (std::size_t k = 0; k < informative; ++k) mean_informative += report.final_weights[k];
  mean_informative /= static_cast<double>(informative);
  report.ratio = max_entropic / mean_informative;
  return report;
}

inline void to_json(nlohmann::json& j, const OptimizerTrace& t) {
  j = nlohmann::json{
      {"initial_weights", t.initial_weights},
      {"final_weights", t.final_weights},
      {"loss_history", t.loss_history},
      {"gradient_norm_history", t.gradient_norm_history},
      {"steps", t.steps},
      {"learning_rate", t.learning_rate},
      {"constraint",
       t.constraint == Constraint::unconstrained ? "unconstrained" : "simplex-projected"},
  };
}

inline void to_json(nlohmann::json& j, const Theorem1Report& r) {
  j = nlohmann::json{
      {"config",
       {{"informative", r.informative},
        {"entropic", r.entropic},
        {"pairs", r.pairs},
        {"seed", r.seed},
        {"lr", r.lr},
        {"steps", r.steps}}},
      {"final_weights", r.final_weights},
      {"grad0", r.grad0},
      {"ratio", r.ratio},
  };
}

}  // namespace encore
