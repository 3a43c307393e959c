// encore: entropy-penalized composition of multi-rule reward scores.
// Subcommands cover entropy profiling, weight schemes, preference-accuracy
// evaluation, entropy-accuracy correlation, Bradley-Terry weight optimization,
// the high-entropy-rule suppression harness, synthetic data generation, and
// scheme comparison tables. Exit codes: 0 success, 1 validation error, 2 usage.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "encore/encore.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

encore::Format pick_format(const std::string& fmt, const std::string& path) {
  if (fmt == "jsonl") return encore::Format::jsonl;
  if (fmt == "csv") return encore::Format::csv;
  return path.ends_with(".csv") ? encore::Format::csv : encore::Format::jsonl;
}

void write_file(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) encore::fail(encore::errc::io, "cannot open for writing: " + path);
  f << body;
  if (!f) encore::fail(encore::errc::io, "write failed: " + path);
}

void write_json(const std::string& path, const nlohmann::json& j) {
  write_file(path, j.dump(2) + "\n");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> seeds;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw UsageError("empty entry in --seeds list");
    char* end = nullptr;
    unsigned long long v = std::strtoull(cur.c_str(), &end, 10);
    if (end == cur.c_str() || *end != '\0') throw UsageError("bad seed '" + cur + "' in --seeds");
    seeds.push_back(v);
    cur.clear();
  };
  for (char c : csv) {
    if (c == ',') flush();
    else cur += c;
  }
  flush();
  return seeds;
}

// Shared --entropy/--grid-step/--bandwidth/--grid-points block.
struct EntropyFlags {
  std::string method = "discrete";
  double grid_step = 0.0;     // 0 = exact values
  double bandwidth = 0.0;     // 0 = Silverman
  int grid_points = 1024;

  void attach(CLI::App* cmd) {
    cmd->add_option("--entropy", method, "Entropy estimator")
        ->check(CLI::IsMember({"discrete", "kde"}))
        ->capture_default_str();
    cmd->add_option("--grid-step", grid_step,
                    "Snap ratings to this grid before counting (0 = exact values; discrete only)")
        ->capture_default_str();
    cmd->add_option("--bandwidth", bandwidth, "Fixed KDE bandwidth (0 = Silverman's rule)")
        ->capture_default_str();
    cmd->add_option("--grid-points", grid_points, "KDE integration nodes")->capture_default_str();
  }

  encore::EntropyMethod parsed_method() const {
    return method == "kde" ? encore::EntropyMethod::differential : encore::EntropyMethod::discrete;
  }

  encore::EntropyOptions options() const {
    encore::EntropyOptions o;
    if (grid_step > 0.0) o.grid_step = grid_step;
    if (bandwidth > 0.0) o.bandwidth = bandwidth;
    o.grid_points = grid_points;
    return o;
  }
};

std::string csv_table(const std::vector<encore::SchemeRow>& rows) {
  std::vector<std::string> cats;
  for (const auto& [name, cat] : rows.front().per_category) cats.push_back(name);
  std::string out = "scheme,overall_accuracy";
  for (const auto& c : cats) out += "," + c;
  out += '\n';
  char buf[64];
  for (const auto& row : rows) {
    out += row.scheme;
    std::snprintf(buf, sizeof buf, ",%.6f", row.overall_accuracy);
    out += buf;
    for (const auto& c : cats) {
      std::snprintf(buf, sizeof buf, ",%.6f", row.per_category.at(c).accuracy);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy-penalized composition of multi-rule reward scores"};
  app.require_subcommand(1);

  // entropy
  auto* c_entropy = app.add_subcommand("entropy", "Per-rule entropy profile of a rated dataset");
  struct {
    std::string in, out, format = "auto";
    EntropyFlags ent;
  } a_entropy;
  c_entropy->add_option("--in", a_entropy.in, "Input dataset")->required();
  c_entropy->add_option("--out", a_entropy.out, "Output profile JSON (stdout if omitted)");
  c_entropy->add_option("--format", a_entropy.format, "Input format")
      ->check(CLI::IsMember({"auto", "jsonl", "csv"}))
      ->capture_default_str();
  a_entropy.ent.attach(c_entropy);

  // weights
  auto* c_weights = app.add_subcommand("weights", "Weight vector for a scheme");
  struct {
    std::string in, out, format = "auto", scheme = "encore";
    double tau = 2.0;
    std::size_t topk = 5;
    std::int64_t rule = -1;
    std::int64_t seed = -1;
    EntropyFlags ent;
  } a_weights;
  c_weights->add_option("--in", a_weights.in, "Input dataset")->required();
  c_weights->add_option("--out", a_weights.out, "Output weights JSON (stdout if omitted)");
  c_weights->add_option("--format", a_weights.format, "Input format")
      ->check(CLI::IsMember({"auto", "jsonl", "csv"}))
      ->capture_default_str();
  c_weights->add_option("--scheme", a_weights.scheme, "Weighting scheme")
      ->check(CLI::IsMember({"encore", "uniform", "dirichlet", "single", "topk", "random_subset"}))
      ->capture_default_str();
  c_weights->add_option("--tau", a_weights.tau, "Softmax temperature (encore)")->capture_default_str();
  c_weights->add_option("--topk", a_weights.topk, "Rules kept by topk/random_subset")
      ->capture_default_str();
  c_weights->add_option("--rule", a_weights.rule, "Rule index for the single scheme");
  c_weights->add_option("--seed", a_weights.seed, "Seed for randomized schemes");
  a_weights.ent.attach(c_weights);

  // evaluate
  auto* c_eval = app.add_subcommand("evaluate", "Preference accuracy of a weighting");
  struct {
    std::string in, out, format = "auto", weights_path, scheme = "encore", tie = "half", csv;
    double tau = 2.0;
    std::size_t topk = 5;
    std::int64_t rule = -1;
    std::int64_t seed = -1;
    EntropyFlags ent;
  } a_eval;
  c_eval->add_option("--in", a_eval.in, "Input dataset")->required();
  c_eval->add_option("--out", a_eval.out, "Output report JSON (stdout if omitted)");
  c_eval->add_option("--format", a_eval.format, "Input format")
      ->check(CLI::IsMember({"auto", "jsonl", "csv"}))
      ->capture_default_str();
  c_eval->add_option("--weights", a_eval.weights_path, "Weights JSON (overrides --scheme)");
  c_eval->add_option("--scheme", a_eval.scheme, "Weighting scheme")
      ->check(CLI::IsMember({"encore", "uniform", "dirichlet", "single", "topk", "random_subset"}))
      ->capture_default_str();
  c_eval->add_option("--tau", a_eval.tau, "Softmax temperature (encore)")->capture_default_str();
  c_eval->add_option("--topk", a_eval.topk, "Rules kept by topk/random_subset")->capture_default_str();
  c_eval->add_option("--rule", a_eval.rule, "Rule index for the single scheme");
  c_eval->add_option("--seed", a_eval.seed, "Seed for randomized schemes");
  c_eval->add_option("--tie-policy", a_eval.tie, "Tie handling")
      ->check(CLI::IsMember({"half", "zero"}))
      ->capture_default_str();
  c_eval->add_option("--csv", a_eval.csv, "Also emit a flat CSV report");
  a_eval.ent.attach(c_eval);

  // correlate
  auto* c_corr = app.add_subcommand("correlate", "Entropy-accuracy correlation across rules");
  struct {
    std::string in, out, format = "auto", tie = "half", scatter;
    EntropyFlags ent;
  } a_corr;
  c_corr->add_option("--in", a_corr.in, "Input dataset")->required();
  c_corr->add_option("--out", a_corr.out, "Output correlation JSON (stdout if omitted)");
  c_corr->add_option("--format", a_corr.format, "Input format")
      ->check(CLI::IsMember({"auto", "jsonl", "csv"}))
      ->capture_default_str();
  c_corr->add_option("--tie-policy", a_corr.tie, "Tie handling")
      ->check(CLI::IsMember({"half", "zero"}))
      ->capture_default_str();
  c_corr->add_option("--scatter", a_corr.scatter, "Also emit per-rule (entropy, accuracy) CSV");
  a_corr.ent.attach(c_corr);

  // optimize
  auto* c_opt = app.add_subcommand("optimize", "Bradley-Terry weight optimization on a dataset");
  struct {
    std::string in, out, format = "auto", constraint = "unconstrained", init = "zero";
    double lr = 0.05;
    std::size_t steps = 2000;
  } a_opt;
  c_opt->add_option("--in", a_opt.in, "Input dataset")->required();
  c_opt->add_option("--out", a_opt.out, "Output trace JSON (stdout if omitted)");
  c_opt->add_option("--format", a_opt.format, "Input format")
      ->check(CLI::IsMember({"auto", "jsonl", "csv"}))
      ->capture_default_str();
  c_opt->add_option("--lr", a_opt.lr, "Learning rate")->capture_default_str();
  c_opt->add_option("--steps", a_opt.steps, "Gradient steps")->capture_default_str();
  c_opt->add_option("--constraint", a_opt.constraint, "Weight constraint")
      ->check(CLI::IsMember({"unconstrained", "simplex"}))
      ->capture_default_str();
  c_opt->add_option("--init", a_opt.init, "Initial weights")
      ->check(CLI::IsMember({"zero", "uniform"}))
      ->capture_default_str();

  // theorem1
  auto* c_thm = app.add_subcommand("theorem1", "High-entropy-rule suppression harness");
  struct {
    std::string out;
    std::size_t informative = 5, entropic = 1, pairs = 10000, steps = 2000;
    std::uint64_t seed = 0;
    double lr = 0.05;
  } a_thm;
  c_thm->add_option("--informative", a_thm.informative, "Label-correlated rules")
      ->capture_default_str();
  c_thm->add_option("--entropic", a_thm.entropic, "Label-independent rules")->capture_default_str();
  c_thm->add_option("--pairs", a_thm.pairs, "Synthetic samples")->capture_default_str();
  c_thm->add_option("--seed", a_thm.seed, "Seed")->required();
  c_thm->add_option("--lr", a_thm.lr, "Learning rate")->capture_default_str();
  c_thm->add_option("--steps", a_thm.steps, "Gradient steps")->capture_default_str();
  c_thm->add_option("--out", a_thm.out, "Output report JSON (stdout if omitted)");

  // simulate
  auto* c_sim = app.add_subcommand("simulate", "Generate a synthetic rated preference dataset");
  struct {
    std::string out, format = "jsonl";
    std::size_t rules = 10, pairs = 10000, noise_rules = 0;
    double sigma_min = 0.02, sigma_max = 0.6;
    std::uint64_t seed = 0;
  } a_sim;
  c_sim->add_option("--rules", a_sim.rules, "Graded rules (noise sweeps low to high)")
      ->capture_default_str();
  c_sim->add_option("--pairs", a_sim.pairs, "Preference pairs")->capture_default_str();
  c_sim->add_option("--seed", a_sim.seed, "Seed")->required();
  c_sim->add_option("--sigma-min", a_sim.sigma_min, "Noise of the cleanest rule")
      ->capture_default_str();
  c_sim->add_option("--sigma-max", a_sim.sigma_max, "Noise of the noisiest rule")
      ->capture_default_str();
  c_sim->add_option("--noise-rules", a_sim.noise_rules,
                    "Extra pure-noise rules (d=0, sigma=0.6) appended after the graded ones")
      ->capture_default_str();
  c_sim->add_option("--format", a_sim.format, "Output format")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  c_sim->add_option("--out", a_sim.out, "Output dataset (stdout if omitted)");

  // compare
  auto* c_cmp = app.add_subcommand("compare", "Scheme comparison table on one dataset");
  struct {
    std::string in, out, format = "auto", tie = "half", csv;
    std::string schemes = "encore,uniform,topk,single,dirichlet";
    std::string seeds = "1,2,3";
    double tau = 2.0;
    std::size_t topk = 5;
  } a_cmp;
  c_cmp->add_option("--in", a_cmp.in, "Input dataset")->required();
  c_cmp->add_option("--out", a_cmp.out, "Output table JSON (stdout if omitted)");
  c_cmp->add_option("--format", a_cmp.format, "Input format")
      ->check(CLI::IsMember({"auto", "jsonl", "csv"}))
      ->capture_default_str();
  c_cmp->add_option("--schemes", a_cmp.schemes, "Comma-separated scheme list")
      ->capture_default_str();
  c_cmp->add_option("--seeds", a_cmp.seeds, "Comma-separated seeds for randomized baselines")
      ->capture_default_str();
  c_cmp->add_option("--tau", a_cmp.tau, "Softmax temperature (encore)")->capture_default_str();
  c_cmp->add_option("--topk", a_cmp.topk, "Rules kept by topk/random_subset")->capture_default_str();
  c_cmp->add_option("--tie-policy", a_cmp.tie, "Tie handling")
      ->check(CLI::IsMember({"half", "zero"}))
      ->capture_default_str();
  c_cmp->add_option("--csv", a_cmp.csv, "Also emit the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    // Builds the weight vector an evaluate-style command asked for.
    auto scheme_weights = [](const std::string& scheme, const encore::RatedDataset& d,
                             const EntropyFlags& ent, double tau, std::size_t topk,
                             std::int64_t rule, std::int64_t seed) -> encore::WeightVector {
      const std::size_t r = d.rule_count();
      if (scheme == "uniform") return encore::uniform_weights(r);
      if (scheme == "single") {
        if (rule < 0) throw UsageError("--scheme single requires --rule");
        return encore::single_rule_weights(r, static_cast<std::size_t>(rule));
      }
      if (scheme == "dirichlet") {
        if (seed < 0) throw UsageError("--scheme dirichlet requires --seed");
        return encore::dirichlet_weights(r, static_cast<std::uint64_t>(seed));
      }
      if (scheme == "random_subset") {
        if (seed < 0) throw UsageError("--scheme random_subset requires --seed");
        return encore::random_subset_weights(r, topk, static_cast<std::uint64_t>(seed));
      }
      auto profile = encore::entropy_profile(d, ent.parsed_method(), ent.options());
      if (scheme == "topk") return encore::topk_weights(profile, topk);
      return encore::encore_weights(profile, tau);
    };

    if (c_entropy->parsed()) {
      auto d = encore::load_dataset(a_entropy.in, pick_format(a_entropy.format, a_entropy.in));
      auto profile =
          encore::entropy_profile(d, a_entropy.ent.parsed_method(), a_entropy.ent.options());
      write_json(a_entropy.out, profile);
    } else if (c_weights->parsed()) {
      auto d = encore::load_dataset(a_weights.in, pick_format(a_weights.format, a_weights.in));
      auto w = scheme_weights(a_weights.scheme, d, a_weights.ent, a_weights.tau, a_weights.topk,
                              a_weights.rule, a_weights.seed);
      write_json(a_weights.out, w);
    } else if (c_eval->parsed()) {
      auto d = encore::load_dataset(a_eval.in, pick_format(a_eval.format, a_eval.in));
      encore::WeightVector w;
      if (!a_eval.weights_path.empty()) {
        std::ifstream f(a_eval.weights_path, std::ios::binary);
        if (!f) encore::fail(encore::errc::io, "cannot open: " + a_eval.weights_path);
        w = nlohmann::json::parse(f).get<encore::WeightVector>();
      } else {
        w = scheme_weights(a_eval.scheme, d, a_eval.ent, a_eval.tau, a_eval.topk, a_eval.rule,
                           a_eval.seed);
      }
      auto report = encore::accuracy(d, w, encore::tie_policy_from_string(a_eval.tie));
      write_json(a_eval.out, report);
      if (!a_eval.csv.empty()) {
        std::string out = "scheme,overall_accuracy,tie_count";
        for (const auto& [name, cat] : report.per_category) out += "," + name;
        out += '\n' + report.scheme;
        char buf[64];
        std::snprintf(buf, sizeof buf, ",%.6f,%zu", report.overall_accuracy, report.tie_count);
        out += buf;
        for (const auto& [name, cat] : report.per_category) {
          std::snprintf(buf, sizeof buf, ",%.6f", cat.accuracy);
          out += buf;
        }
        out += '\n';
        write_file(a_eval.csv, out);
      }
    } else if (c_corr->parsed()) {
      auto d = encore::load_dataset(a_corr.in, pick_format(a_corr.format, a_corr.in));
      auto result = encore::entropy_accuracy_correlation(
          d, a_corr.ent.parsed_method(), a_corr.ent.options(),
          encore::tie_policy_from_string(a_corr.tie));
      write_json(a_corr.out, result);
      if (!a_corr.scatter.empty()) {
        auto profile = encore::entropy_profile(d, a_corr.ent.parsed_method(), a_corr.ent.options());
        auto acc = encore::per_rule_accuracy(d, encore::tie_policy_from_string(a_corr.tie));
        std::string out = "rule,entropy,accuracy\n";
        char buf[96];
        for (std::size_t k = 0; k < profile.per_rule.size(); ++k) {
          std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", k, profile.per_rule[k], acc[k]);
          out += buf;
        }
        write_file(a_corr.scatter, out);
      }
    } else if (c_opt->parsed()) {
      auto d = encore::load_dataset(a_opt.in, pick_format(a_opt.format, a_opt.in));
      auto mm = encore::margin_matrix(d);
      std::vector<double> init(mm.cols, 0.0);
      if (a_opt.init == "uniform") {
        init.assign(mm.cols, 1.0 / static_cast<double>(mm.cols));
      }
      auto constraint = a_opt.constraint == "simplex" ? encore::Constraint::simplex_projected
                                                      : encore::Constraint::unconstrained;
      auto trace = encore::optimize_weights(mm, init, a_opt.lr, a_opt.steps, constraint);
      write_json(a_opt.out, trace);
    } else if (c_thm->parsed()) {
      auto report = encore::theorem1_harness(a_thm.informative, a_thm.entropic, a_thm.pairs,
                                             a_thm.seed, a_thm.lr, a_thm.steps);
      write_json(a_thm.out, report);
    } else if (c_sim->parsed()) {
      auto cfg = encore::graded_rater_config(a_sim.rules, a_sim.sigma_min, a_sim.sigma_max,
                                             a_sim.pairs, a_sim.seed);
      for (std::size_t k = 0; k < a_sim.noise_rules; ++k) {
        encore::RaterConfig rt;
        rt.rule_index = static_cast<int>(a_sim.rules + k);
        rt.d = 0.0;
        rt.sigma = 0.6;
        rt.grid_step = 0.1;
        rt.mu = 0.9;
        cfg.raters.push_back(rt);
      }
      auto d = encore::generate(cfg);
      write_file(a_sim.out, a_sim.format == "csv" ? encore::to_csv(d) : encore::to_jsonl(d));
    } else if (c_cmp->parsed()) {
      auto d = encore::load_dataset(a_cmp.in, pick_format(a_cmp.format, a_cmp.in));
      std::vector<std::string> schemes;
      std::string cur;
      for (char c : a_cmp.schemes + ",") {
        if (c == ',') {
          if (!cur.empty()) schemes.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      auto rows = encore::compare_schemes(d, schemes, a_cmp.tau, a_cmp.topk,
                                          parse_seed_list(a_cmp.seeds),
                                          encore::tie_policy_from_string(a_cmp.tie));
      write_json(a_cmp.out, nlohmann::json{{"rows", rows}});
      if (!a_cmp.csv.empty()) write_file(a_cmp.csv, csv_table(rows));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const encore::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
