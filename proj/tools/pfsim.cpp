// pfsim: sample, enumerate and verify plane forests with a prescribed degree
// sequence, and run the desk-scale experiments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pf/error.hpp"
#include "pf/experiments.hpp"
#include "pf/forests.hpp"
#include "pf/paths.hpp"
#include "pf/sampler.hpp"

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pf::Error(pf::ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw pf::Error(pf::ErrorCode::ParseError, path + ": " + e.what());
  }
}

void print_verdicts(const pf::experiments::ExperimentReport& r) {
  for (const auto& v : r.verdicts) {
    std::cout << (v.passed ? "PASS " : "FAIL ") << r.name << ' ' << v.name << ": " << v.statistic << ' '
              << v.relation << ' ' << v.threshold << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform plane forests with prescribed degree sequences"};
  app.require_subcommand(1);

  std::string degrees_file;
  std::uint64_t seed = 1;
  std::int64_t count = 1;
  auto* sample = app.add_subcommand("sample", "Uniform forests as JSON lines");
  sample->add_option("--degrees", degrees_file, "JSON file {\"counts\": {...}}")->required();
  sample->add_option("--seed", seed, "RNG seed");
  sample->add_option("--count", count, "Number of forests")->check(CLI::PositiveNumber);

  std::string what = "forests";
  std::int64_t cap = pf::kDefaultEnumerationCap;
  auto* enumerate = app.add_subcommand("enumerate", "All bridges, first-passage bridges or forests as JSON lines");
  enumerate->add_option("--degrees", degrees_file, "JSON file {\"counts\": {...}}")->required();
  enumerate->add_option("--what", what, "bridges | fp | forests")
      ->check(CLI::IsMember({"bridges", "fp", "forests"}));
  enumerate->add_option("--cap", cap, "Largest n allowed");

  std::int64_t max_n = 8, max_degree = 5;
  std::string out_dir;
  auto* verify = app.add_subcommand("verify", "Exhaustive small-n suite");
  verify->add_option("--max-n", max_n, "Largest n(s)");
  verify->add_option("--max-degree", max_degree, "Largest degree");
  verify->add_option("--out", out_dir, "Write report.json here");

  std::string name, config_file;
  std::optional<std::uint64_t> exp_seed;
  auto* experiment = app.add_subcommand("experiment", "Run one experiment; exit 0 iff all verdicts pass");
  experiment->add_option("name", name, "Experiment name")
      ->required()
      ->check(CLI::IsMember(pf::experiments::experiment_names()));
  experiment->add_option("--config", config_file, "JSON config (docs/config.md)");
  experiment->add_option("--seed", exp_seed, "Overrides the config seed");
  experiment->add_option("--out", out_dir, "Output directory");

  auto* diagnose = app.add_subcommand("stats", "Degree statistics and regime diagnostics");
  diagnose->add_option("--degrees", degrees_file, "JSON file {\"counts\": {...}}")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      const auto s = pf::degree_sequence_from_json(read_json(degrees_file));
      for (std::int64_t r = 0; r < count; ++r) {
        pf::SeededRng rng(seed, static_cast<std::uint64_t>(r));
        std::cout << pf::to_json(pf::sample_forest(s, rng)).dump() << '\n';
      }
      return 0;
    }
    if (*enumerate) {
      const auto s = pf::degree_sequence_from_json(read_json(degrees_file));
      if (what == "bridges") {
        for (const auto& p : pf::enumerate_bridges(s, cap)) std::cout << pf::to_json(p).dump() << '\n';
      } else {
        for (const auto& p : pf::enumerate_fp_bridges(s, cap)) {
          std::cout << (what == "fp" ? pf::to_json(p) : pf::to_json(pf::decode(p))).dump() << '\n';
        }
      }
      return 0;
    }
    if (*verify) {
      const auto report = pf::experiments::verify_exhaustive(max_n, max_degree);
      print_verdicts(report);
      if (!out_dir.empty()) report.write(out_dir);
      return report.all_passed() ? 0 : 1;
    }
    if (*experiment) {
      auto cfg = pf::experiments::default_config(name);
      if (!config_file.empty()) cfg = pf::experiments::config_from_json(read_json(config_file), cfg);
      if (exp_seed) cfg.seed = *exp_seed;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      if (cfg.output_dir.empty()) cfg.output_dir = "results/" + name;
      const auto report = pf::experiments::run_experiment(name, cfg);
      report.write(cfg.output_dir);
      print_verdicts(report);
      std::cout << "report: " << cfg.output_dir << "/report.json\n";
      return report.all_passed() ? 0 : 1;
    }
    if (*diagnose) {
      const auto s = pf::degree_sequence_from_json(read_json(degrees_file));
      const auto st = pf::stats(s);
      nlohmann::json j{{"n", st.n},
                       {"c", st.c},
                       {"delta", st.delta},
                       {"sigma2_s", st.sigma2_s},
                       {"sigma2_p", st.sigma2_p},
                       {"mu_p", st.mu_p},
                       {"variance_p", st.variance_p}};
      if (st.sigma2_s > 0) {
        const auto r = pf::regime_diagnostics(s);
        j["c_over_sigma_sqrt_n"] = r.c_over_sigma_sqrt_n;
        j["c_over_std_sqrt_n"] = r.c_over_std_sqrt_n;
        j["delta_over_sqrt_n"] = r.delta_over_sqrt_n;
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }
  } catch (const pf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
