#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pf/degrees.hpp"

namespace pf::experiments {

/// Knobs shared by all experiments; each experiment reads the subset it needs.
/// JSON keys match the field names (see docs/config.md).
struct ExperimentConfig {
  /// "binary" ({0,2} tuned to lambda), "geometric", "tree" (binary, c = 1)
  /// or "explicit" (uses `degrees` for every n).
  std::string family = "binary";
  std::optional<DegreeSequence> degrees;
  std::vector<std::int64_t> n_list{10000};
  double lambda = 1.0;
  std::int64_t replicates = 10000;
  std::int64_t continuum_replicates = 10000;
  std::int64_t grid_m = 1 << 14;
  std::uint64_t seed = 20240611;
  std::string output_dir;

  double ks_alpha = 1e-3;
  double ks_margin = 0.01;
  std::optional<double> ks_threshold;  // overrides alpha + margin
  double se_multiplier = 3.0;

  // walk convergence
  std::vector<double> times{0.25, 0.5, 0.75};
  // tree sizes
  std::int64_t ranks = 3;
  std::int64_t excursion_grid_m = 1 << 16;
  double excursion_sum_min = 0.99;
  double excursion_sum_fraction = 0.95;
  // height tail
  std::int64_t height_grid_points = 20;
  double height_grid_step = 0.25;  // in units of sqrt(n)
  // variance bound
  std::vector<std::int64_t> k_list{1, 2, 5, 10, 50};
  std::vector<double> lambda_list{2.0, 2.5, 3.0, 4.0, 6.0};
  std::int64_t exhaustive_max_n = 8;
  std::int64_t exhaustive_max_degree = 5;
  // degree concentration
  std::vector<std::int64_t> s_list{100, 1000, 5000};
  std::vector<double> t_list{0.02, 0.05, 0.1, 0.2};
  double epsilon = 0.1;
  std::vector<std::int64_t> forest_n_list{1000, 10000};
  std::int64_t forest_replicates = 2000;
  // small tree heights
  std::vector<double> beta_list{1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  double rho = 0.1;
};

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Defaults tuned to the desk-scale verification run of each experiment.
ExperimentConfig default_config(const std::string& name);

DegreeSequence family_sequence(const ExperimentConfig& cfg, std::int64_t n);

struct Verdict {
  std::string name;
  bool passed;
  double statistic;
  double threshold;
  std::string relation;  // "<", "<=", ">=" or "=="
};

struct ExperimentReport {
  std::string name;
  nlohmann::json parameters = nlohmann::json::object();
  std::map<std::string, double> statistics;
  std::map<std::string, std::string> tables;  // file stem -> CSV text
  std::vector<Verdict> verdicts;

  /// Records a verdict and its threshold under parameters["thresholds"].
  const Verdict& check(const std::string& verdict, double statistic, const std::string& relation,
                       double threshold);
  bool all_passed() const;
  const Verdict* find(const std::string& verdict) const;
  nlohmann::json to_json() const;
  /// report.json plus one CSV per table.
  void write(const std::filesystem::path& dir) const;
};

ExperimentReport exp_walk_convergence(const ExperimentConfig& cfg);
ExperimentReport exp_tree_sizes(const ExperimentConfig& cfg);
ExperimentReport exp_height_tail(const ExperimentConfig& cfg);
ExperimentReport exp_variance_bound(const ExperimentConfig& cfg);
ExperimentReport exp_degree_concentration(const ExperimentConfig& cfg);
ExperimentReport exp_small_tree_heights(const ExperimentConfig& cfg);
ExperimentReport exp_largest_tree_scaling(const ExperimentConfig& cfg);

/// Exhaustive small-n suite: counting formulas, n-to-1 rotation, codec
/// round trips and the marked-forest maps over every sequence with
/// n <= max_n and max degree <= max_degree.
ExperimentReport verify_exhaustive(std::int64_t max_n, std::int64_t max_degree);

std::vector<DegreeSequence> enumerate_degree_sequences(std::int64_t max_n, std::int64_t max_degree);

const std::vector<std::string>& experiment_names();
/// Throws Error{InvalidArgument} for an unknown name.
ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& cfg);

/// Height-tail bound 7 exp(-m^2 / (608 sigma^2(s) 1_s^2)) for a tree sequence.
double height_tail_bound(const DegreeSequence& s, double m);
/// exp(-(3 sigma^2(c) / 16 n) (lambda k / Delta^2)).
double variance_bound(std::int64_t n, std::int64_t sum_sq, std::int64_t max_child, double lambda,
                      std::int64_t k);
/// exp(-3 s t^2 / (3 + 2 t)).
double martingale_bound(double s, double t);

}  // namespace pf::experiments
