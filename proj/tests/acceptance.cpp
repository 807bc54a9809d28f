// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
// Thresholds below are the fixed acceptance values; experiment reports carry
// their own (usually tighter) alpha-based thresholds as well.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "pf/experiments.hpp"
#include "pf/forests.hpp"
#include "pf/ghp.hpp"
#include "pf/paths.hpp"
#include "pf/sampler.hpp"
#include "pf/stats.hpp"

using namespace pf;
using namespace pf::experiments;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.passed) ++failures;
  std::printf("%s criterion %2d %s: %s [%.1fs]\n", out.passed ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs);
  std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(5);
  os << x;
  return os.str();
}

const Verdict& need(const ExperimentReport& r, const std::string& name) {
  const auto* v = r.find(name);
  if (!v) throw std::runtime_error("missing verdict " + name);
  return *v;
}

// Verdicts whose name contains `part`: passes and the worst offender.
Outcome all_matching(const ExperimentReport& r, const std::string& part) {
  int total = 0, bad = 0;
  std::string worst;
  for (const auto& v : r.verdicts) {
    if (v.name.find(part) == std::string::npos) continue;
    ++total;
    if (!v.passed) {
      ++bad;
      if (worst.empty()) worst = v.name + " " + num(v.statistic) + " " + v.relation + " " + num(v.threshold);
    }
  }
  std::string detail = std::to_string(total - bad) + "/" + std::to_string(total) + " grid points within bound";
  if (bad) detail += "; first failure " + worst;
  return {total > 0 && bad == 0, detail};
}

std::int64_t chi_square_run(const DegreeSequence& s, std::int64_t samples, std::uint64_t seed, double& statistic,
                            double& critical) {
  std::map<PlaneForest, std::int64_t> tally;
  for (const auto& p : enumerate_fp_bridges(s)) tally[decode(p)] = 0;
  const auto support = static_cast<std::int64_t>(tally.size());
  for (std::int64_t r = 0; r < samples; ++r) {
    SeededRng rng(seed, static_cast<std::uint64_t>(r));
    auto it = tally.find(sample_forest(s, rng));
    if (it == tally.end()) throw std::runtime_error("sample outside F(s)");
    ++it->second;
  }
  std::vector<std::int64_t> obs;
  for (auto& [f, k] : tally) obs.push_back(k);
  const std::vector<double> exp(obs.size(), static_cast<double>(samples) / static_cast<double>(support));
  statistic = stat::chi_square(obs, exp);
  critical = stat::chi_square_critical(1e-3, static_cast<double>(support - 1));
  return support;
}

ghp::FiniteMetricMeasureSpace random_space(SeededRng& rng) {
  const auto k = static_cast<std::size_t>(rng.uniform_int(1, 5));
  std::vector<double> d(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) d[i * k + j] = d[j * k + i] = rng.uniform_real(0.05, 1.0);
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) d[i * k + j] = std::min(d[i * k + j], d[i * k + m] + d[m * k + j]);
  return ghp::FiniteMetricMeasureSpace(k, d, static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(k) - 1)),
                                       std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

}  // namespace

int main() {
  const std::uint64_t seed = 20240611;

  // Criteria 1, 2, 3 (exhaustive part) and 5 share one pass over the family.
  const auto t0 = std::chrono::steady_clock::now();
  const auto exhaustive = verify_exhaustive(8, 5);
  const double exhaustive_secs = elapsed_since(t0);
  const auto sequences = exhaustive.statistics.at("sequences");

  criterion(1, "exhaustive counting (n<=8, max degree<=5)", [&]() -> Outcome {
    const bool ok = need(exhaustive, "bridge_count_failures").passed && need(exhaustive, "fp_count_failures").passed &&
                    exhaustive_secs < 120.0;
    return {ok, num(sequences) + " sequences, " + num(exhaustive.statistics.at("bridges_total")) + " bridges, " +
                    num(exhaustive.statistics.at("fp_bridges_total")) + " first-passage bridges; suite " +
                    num(exhaustive_secs) + "s < 120s"};
  });

  criterion(2, "rotation is exactly n-to-1", [&]() -> Outcome {
    const auto& v = need(exhaustive, "n_to_1_failures");
    return {v.passed, num(v.statistic) + " failing sequences of " + num(sequences)};
  });

  criterion(3, "codec round trip", [&]() -> Outcome {
    const auto& v = need(exhaustive, "codec_failures");
    const auto s = binary_family_for_lambda(1000, 1.0);
    std::int64_t bad = 0;
    for (std::uint64_t r = 0; r < 10000; ++r) {
      SeededRng rng(seed, r);
      const auto p = sample_fp_bridge(s, rng);
      const auto f = decode(p);
      if (!(encode(f) == p && decode(encode(f)) == f)) ++bad;
    }
    return {v.passed && bad == 0,
            "exhaustive failures " + num(v.statistic) + ", random n=1000 failures " + std::to_string(bad) + "/10000"};
  });

  criterion(4, "sampler uniformity (chi-square, 99.9%)", [&]() -> Outcome {
    const auto start = std::chrono::steady_clock::now();
    double x1, c1, x2, c2;
    const auto k1 = chi_square_run(DegreeSequence::validate({{0, 2}, {1, 2}}), 30000, seed, x1, c1);
    const auto k2 = chi_square_run(DegreeSequence::validate({{0, 3}, {1, 2}, {3, 1}}), 100000, seed + 1, x2, c2);
    const double secs = elapsed_since(start);
    return {k1 == 3 && k2 == 10 && x1 < c1 && x2 < c2 && secs < 60.0,
            "{0:2,1:2}: " + num(x1) + " < " + num(c1) + "; {0:3,1:2,3:1}: " + num(x2) + " < " + num(c2)};
  });

  criterion(5, "marked maps g c-to-1, h n-to-1", [&]() -> Outcome {
    const auto& v = need(exhaustive, "marked_map_failures");
    return {v.passed, num(v.statistic) + " failing sequences of " + num(sequences)};
  });

  criterion(6, "walk convergence to the first-passage bridge", [&]() -> Outcome {
    const auto start = std::chrono::steady_clock::now();
    const auto r = exp_walk_convergence(default_config("walk_convergence"));
    const double secs = elapsed_since(start);
    bool ok = secs < 600.0 && need(r, "n10000.endpoint_mismatches").passed;
    std::string detail = "KS2";
    for (const char* t : {"t0.25", "t0.50", "t0.75"}) {
      const double ks = need(r, std::string("n10000.") + t + ".ks_two_sample").statistic;
      ok = ok && ks < 0.04;
      detail += std::string(" ") + t + "=" + num(ks);
    }
    const double ks1 = need(r, "n10000.t0.50.ks_density").statistic;
    ok = ok && ks1 < 0.03;
    detail += " (< 0.04); KS1 t0.50=" + num(ks1) + " (< 0.03); endpoint identity exact";
    return {ok, detail};
  });

  criterion(7, "ranked tree sizes vs excursion lengths", [&]() -> Outcome {
    const auto r = exp_tree_sizes(default_config("tree_sizes"));
    bool ok = need(r, "n10000.size_sum_mismatches").passed;
    std::string detail = "KS2";
    for (int l = 1; l <= 3; ++l) {
      const double ks = need(r, "n10000.rank" + std::to_string(l) + ".ks_two_sample").statistic;
      ok = ok && ks < 0.05;
      detail += " l" + std::to_string(l) + "=" + num(ks);
    }
    const auto& frac = need(r, "n10000.excursion_sum_fraction");
    ok = ok && frac.statistic >= 0.95;
    detail += " (< 0.05); size sums exact; continuum sum >= 0.99 in " + num(frac.statistic) + " of draws";
    return {ok, detail};
  });

  criterion(8, "height tail bound", [&]() -> Outcome {
    return all_matching(exp_height_tail(default_config("height_tail")), ".survival_");
  });

  criterion(9, "variance bound", [&]() -> Outcome {
    const auto r = exp_variance_bound(default_config("variance_bound"));
    auto out = all_matching(r, ".lambda");
    const auto& ex = need(r, "exhaustive.worst_excess");
    out.passed = out.passed && ex.passed;
    out.detail += "; exhaustive n<=8 worst excess " + num(ex.statistic) + " over " +
                  num(r.statistics.at("exhaustive.cases")) + " cases";
    return out;
  });

  criterion(10, "martingale bound", [&]() -> Outcome {
    const auto r = exp_degree_concentration(default_config("degree_concentration"));
    auto out = all_matching(r, ".s");
    out.detail += "; worst excess over twice the bound " + num(r.statistics.at("n10000.martingale_worst_excess_two_sided"));
    return out;
  });

  criterion(11, "GHP machinery", [&]() -> Outcome {
    SeededRng rng(seed, 11);
    int axiom_failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto a = random_space(rng), b = random_space(rng), c = random_space(rng);
      const double ab = ghp::rooted_gh_exact(a, b);
      if (ab != ghp::rooted_gh_exact(b, a) || ab < 0 || ghp::rooted_gh_exact(a, a) != 0.0 ||
          ghp::rooted_gh_exact(a, c) > ab + ghp::rooted_gh_exact(b, c) + 1e-12) {
        ++axiom_failures;
      }
    }

    std::vector<PlaneTree> trees;
    for (const auto& s : enumerate_degree_sequences(6, 5)) {
      if (s.c() != 1) continue;
      for (const auto& p : enumerate_fp_bridges(s)) trees.push_back(decode(p).trees.front());
    }
    const std::int64_t n_total = 6;
    const double sigma = 1.0;
    std::int64_t pairs = 0, dominated = 0;
    double tightest = INFINITY;
    for (std::size_t i = 0; i < trees.size(); ++i) {
      const auto si = ghp::scaled_tree_space(trees[i], n_total, sigma);
      const auto fi = ghp::rescaled_contour(trees[i], n_total, sigma);
      for (std::size_t j = i; j < trees.size(); ++j) {
        const double gh = ghp::rooted_gh_exact(si, ghp::scaled_tree_space(trees[j], n_total, sigma));
        const double bound = ghp::ghp_coding_bound(fi, ghp::rescaled_contour(trees[j], n_total, sigma));
        ++pairs;
        if (gh <= bound) ++dominated;
        tightest = std::min(tightest, bound - gh);
      }
    }

    const auto cb = ghp::discrete_coupling_bounds(10000, 1.2);
    const bool arithmetic = std::abs(cb.d_H - 0.003) <= 1e-15 && std::abs(cb.d_P_bound - 0.0061) <= 1e-15;
    return {axiom_failures == 0 && trees.size() == 65 && dominated == pairs && arithmetic,
            "axiom failures " + std::to_string(axiom_failures) + "/1000; coding bound dominates " +
                std::to_string(dominated) + "/" + std::to_string(pairs) + " pairs of " +
                std::to_string(trees.size()) + " trees (min slack " + num(tightest) + "); d_H=" + num(cb.d_H) +
                " d_P_bound=" + num(cb.d_P_bound)};
  });

  criterion(12, "small trees are not tall", [&]() -> Outcome {
    const auto r = exp_small_tree_heights(default_config("small_tree_heights"));
    const auto& v = need(r, "n10000.frequency_beta1e-03");
    return {v.passed && v.threshold == 0.1,
            "frequency at beta=1e-3 is " + num(v.statistic) + " < " + num(v.threshold) + " over 2000 forests"};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
