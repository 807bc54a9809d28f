#include <cmath>

#include "pf/error.hpp"
#include "pf/experiments.hpp"

namespace pf::experiments {

namespace {

template <class T>
void read(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config key '") + key + "': " + e.what());
  }
}

template <class T>
void read(const nlohmann::json& j, const char* key, std::optional<T>& field) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    field.reset();
    return;
  }
  T value{};
  read(j, key, value);
  field = value;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig cfg) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    static const char* known[] = {
        "family", "degrees", "n_list", "lambda", "replicates", "continuum_replicates", "grid_m", "seed",
        "output_dir", "ks_alpha", "ks_margin", "ks_threshold", "se_multiplier", "times", "ranks",
        "excursion_grid_m", "excursion_sum_min", "excursion_sum_fraction", "height_grid_points",
        "height_grid_step", "k_list", "lambda_list", "exhaustive_max_n", "exhaustive_max_degree",
        "s_list", "t_list", "epsilon", "forest_n_list", "forest_replicates", "beta_list", "rho"};
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) throw Error(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
  read(j, "family", cfg.family);
  if (j.contains("degrees")) cfg.degrees = degree_sequence_from_json(j["degrees"]);
  read(j, "n_list", cfg.n_list);
  read(j, "lambda", cfg.lambda);
  read(j, "replicates", cfg.replicates);
  read(j, "continuum_replicates", cfg.continuum_replicates);
  read(j, "grid_m", cfg.grid_m);
  read(j, "seed", cfg.seed);
  read(j, "output_dir", cfg.output_dir);
  read(j, "ks_alpha", cfg.ks_alpha);
  read(j, "ks_margin", cfg.ks_margin);
  read(j, "ks_threshold", cfg.ks_threshold);
  read(j, "se_multiplier", cfg.se_multiplier);
  read(j, "times", cfg.times);
  read(j, "ranks", cfg.ranks);
  read(j, "excursion_grid_m", cfg.excursion_grid_m);
  read(j, "excursion_sum_min", cfg.excursion_sum_min);
  read(j, "excursion_sum_fraction", cfg.excursion_sum_fraction);
  read(j, "height_grid_points", cfg.height_grid_points);
  read(j, "height_grid_step", cfg.height_grid_step);
  read(j, "k_list", cfg.k_list);
  read(j, "lambda_list", cfg.lambda_list);
  read(j, "exhaustive_max_n", cfg.exhaustive_max_n);
  read(j, "exhaustive_max_degree", cfg.exhaustive_max_degree);
  read(j, "s_list", cfg.s_list);
  read(j, "t_list", cfg.t_list);
  read(j, "epsilon", cfg.epsilon);
  read(j, "forest_n_list", cfg.forest_n_list);
  read(j, "forest_replicates", cfg.forest_replicates);
  read(j, "beta_list", cfg.beta_list);
  read(j, "rho", cfg.rho);

  if (cfg.replicates < 1 || cfg.continuum_replicates < 1 || cfg.forest_replicates < 1) {
    throw Error(ErrorCode::InvalidArgument, "replicate counts must be >= 1");
  }
  if (cfg.grid_m < 2 || cfg.excursion_grid_m < 2) throw Error(ErrorCode::InvalidArgument, "grid needs m >= 2");
  if (cfg.n_list.empty()) throw Error(ErrorCode::InvalidArgument, "n_list must not be empty");
  if (cfg.family == "explicit" && !cfg.degrees) {
    throw Error(ErrorCode::InvalidArgument, "family 'explicit' needs a 'degrees' object");
  }
  // Every generated sequence must validate.
  for (auto n : cfg.n_list) family_sequence(cfg, n);
  return cfg;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j{{"family", cfg.family},
                   {"n_list", cfg.n_list},
                   {"lambda", cfg.lambda},
                   {"replicates", cfg.replicates},
                   {"continuum_replicates", cfg.continuum_replicates},
                   {"grid_m", cfg.grid_m},
                   {"seed", cfg.seed},
                   {"output_dir", cfg.output_dir},
                   {"ks_alpha", cfg.ks_alpha},
                   {"ks_margin", cfg.ks_margin},
                   {"ks_threshold", cfg.ks_threshold ? nlohmann::json(*cfg.ks_threshold) : nlohmann::json()},
                   {"se_multiplier", cfg.se_multiplier},
                   {"times", cfg.times},
                   {"ranks", cfg.ranks},
                   {"excursion_grid_m", cfg.excursion_grid_m},
                   {"excursion_sum_min", cfg.excursion_sum_min},
                   {"excursion_sum_fraction", cfg.excursion_sum_fraction},
                   {"height_grid_points", cfg.height_grid_points},
                   {"height_grid_step", cfg.height_grid_step},
                   {"k_list", cfg.k_list},
                   {"lambda_list", cfg.lambda_list},
                   {"exhaustive_max_n", cfg.exhaustive_max_n},
                   {"exhaustive_max_degree", cfg.exhaustive_max_degree},
                   {"s_list", cfg.s_list},
                   {"t_list", cfg.t_list},
                   {"epsilon", cfg.epsilon},
                   {"forest_n_list", cfg.forest_n_list},
                   {"forest_replicates", cfg.forest_replicates},
                   {"beta_list", cfg.beta_list},
                   {"rho", cfg.rho}};
  if (cfg.degrees) j["degrees"] = pf::to_json(*cfg.degrees);
  return j;
}

ExperimentConfig default_config(const std::string& name) {
  ExperimentConfig cfg;
  if (name == "tree_sizes" || name == "largest_tree_scaling") {
    cfg.replicates = 5000;
    cfg.continuum_replicates = 5000;
    // heights carry an O(1) finite-size deficit; larger n shows it vanish
    if (name == "largest_tree_scaling") cfg.n_list = {10000, 40000, 160000};
  } else if (name == "height_tail") {
    cfg.family = "tree";
    cfg.n_list = {1000, 10000};
  } else if (name == "small_tree_heights") {
    cfg.replicates = 2000;
  }
  return cfg;
}

DegreeSequence family_sequence(const ExperimentConfig& cfg, std::int64_t n) {
  if (cfg.family == "binary") return binary_family_for_lambda(n, cfg.lambda);
  if (cfg.family == "geometric") return geometric_family_for_lambda(n, cfg.lambda);
  if (cfg.family == "tree") return binary_family(n, 1);
  if (cfg.family == "explicit") {
    if (!cfg.degrees) throw Error(ErrorCode::InvalidArgument, "family 'explicit' needs degrees");
    return *cfg.degrees;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown degree family '" + cfg.family + "'");
}

}  // namespace pf::experiments
