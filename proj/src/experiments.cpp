#include "pf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "pf/continuum.hpp"
#include "pf/error.hpp"
#include "pf/forests.hpp"
#include "pf/ghp.hpp"
#include "pf/kernels.hpp"
#include "pf/paths.hpp"
#include "pf/sampler.hpp"
#include "pf/stats.hpp"

namespace pf::experiments {

namespace {

// Stream parts; each experiment draws from disjoint (seed, part, replicate)
// streams so that sub-experiments stay reproducible on their own.
enum Part : std::uint32_t {
  kWalkForests = 1,
  kWalkContinuum,
  kSizeForests,
  kSizeContinuum,
  kHeightTrees,
  kVariancePerms,
  kConcentrationPerms,
  kConcentrationForests,
  kSmallTreeForests,
  kScalingForests,
  kScalingContinuum,
  kScalingExcursions,
};

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string tag_n(std::int64_t n) { return "n" + std::to_string(n); }
std::string tag_t(double t) { return fmt("t%.2f", t); }

double ks2_threshold(const ExperimentConfig& cfg, std::size_t a, std::size_t b) {
  return cfg.ks_threshold.value_or(stat::ks_two_sample_critical(cfg.ks_alpha, a, b) + cfg.ks_margin);
}

double ks1_threshold(const ExperimentConfig& cfg, std::size_t a) {
  return cfg.ks_threshold.value_or(stat::ks_one_sample_critical(cfg.ks_alpha, a) + cfg.ks_margin);
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t c) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

// Two-column QQ table of two samples at 99 probability levels.
std::string qq_table(const std::vector<double>& a, const std::vector<double>& b, const char* names) {
  std::ostringstream os;
  os << names << '\n';
  for (int q = 1; q < 100; ++q) {
    os << stat::quantile(a, q / 100.0) << ',' << stat::quantile(b, q / 100.0) << '\n';
  }
  return os.str();
}

double standard_deviation(const DegreeSequence& s) { return std::sqrt(stats(s).variance_p); }

void describe_sequence(ExperimentReport& report, const std::string& tag, const DegreeSequence& s) {
  const auto st = stats(s);
  report.parameters["sequences"][tag] = pf::to_json(s);
  report.statistics[tag + ".c"] = static_cast<double>(st.c);
  report.statistics[tag + ".variance_p"] = st.variance_p;
  report.statistics[tag + ".lambda_realized"] =
      static_cast<double>(st.c) / std::sqrt(st.variance_p * static_cast<double>(st.n));
}

}  // namespace

double height_tail_bound(const DegreeSequence& s, double m) {
  const auto st = stats(s);
  const double n = static_cast<double>(st.n);
  const double denom = n - 1 - static_cast<double>(s.count(1));
  if (st.n <= 2 || denom <= 0) return 7.0;
  const double indicator = (n - 2) / denom;
  return 7.0 * std::exp(-m * m / (608.0 * static_cast<double>(st.sigma2_s) * indicator * indicator));
}

double variance_bound(std::int64_t n, std::int64_t sum_sq, std::int64_t max_child, double lambda,
                      std::int64_t k) {
  const double delta2 = static_cast<double>(max_child) * static_cast<double>(max_child);
  return std::exp(-(3.0 * static_cast<double>(sum_sq) / (16.0 * static_cast<double>(n))) *
                  (lambda * static_cast<double>(k) / delta2));
}

double martingale_bound(double s, double t) { return std::exp(-3.0 * s * t * t / (3.0 + 2.0 * t)); }

// ---------------------------------------------------------------------------

ExperimentReport exp_walk_convergence(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = "walk_convergence";
  report.parameters["config"] = to_json(cfg);
  const auto T = cfg.times.size();
  const auto R = static_cast<std::size_t>(cfg.replicates);
  const auto Rc = static_cast<std::size_t>(cfg.continuum_replicates);

  for (auto n : cfg.n_list) {
    const auto tn = tag_n(n);
    const auto s = family_sequence(cfg, n);
    describe_sequence(report, tn, s);
    const double sd = standard_deviation(s);
    const double scale = 1.0 / (sd * std::sqrt(static_cast<double>(n)));
    const double lambda_n = static_cast<double>(s.c()) * scale;

    // Row: T rotated values, T pre-rotation values, endpoint mismatch flag.
    auto rows = run_replicates<std::vector<double>>(R, [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kWalkForests, r));
      const auto bridge = sample_bridge(s, rng);
      const auto nu = rng.uniform_int(0, s.c() - 1);
      const auto fp = rotate_to_first_passage(bridge, nu);
      const auto forest_walk = encode(decode(fp)).values();
      const auto bridge_walk = bridge.values();
      std::vector<double> row(2 * T + 1);
      for (std::size_t i = 0; i < T; ++i) {
        const double x = cfg.times[i] * static_cast<double>(n);
        const auto k = std::min<std::size_t>(static_cast<std::size_t>(x), static_cast<std::size_t>(n) - 1);
        const double frac = x - static_cast<double>(k);
        auto interp = [&](const std::vector<std::int64_t>& w) {
          return scale * (static_cast<double>(w[k]) + frac * static_cast<double>(w[k + 1] - w[k]));
        };
        row[i] = interp(forest_walk);
        row[T + i] = interp(bridge_walk);
      }
      row[2 * T] = forest_walk.back() == -s.c() ? 0.0 : 1.0;
      return row;
    });
    const auto continuum =
        fp_bridge_marginals(lambda_n, cfg.grid_m, cfg.times, cfg.seed, kWalkContinuum, Rc, Execution::Parallel);

    const auto mismatches = column(rows, 2 * T);
    report.check(tn + ".endpoint_mismatches", std::accumulate(mismatches.begin(), mismatches.end(), 0.0), "==",
                 0.0);
    report.statistics[tn + ".endpoint_scaled"] = -lambda_n;

    for (std::size_t i = 0; i < T; ++i) {
      const double t = cfg.times[i];
      const auto key = tn + "." + tag_t(t);
      const auto discrete = column(rows, i);
      const auto cont = column(continuum, i);
      report.check(key + ".ks_two_sample", stat::ks_two_sample(discrete, cont), "<",
                   ks2_threshold(cfg, R, Rc));
      if (t > 0 && t < 1) {
        report.check(key + ".ks_density", stat::ks_one_sample(discrete, [&](double x) {
                       return continuum::fp_marginal_cdf(lambda_n, t, x);
                     }),
                     "<", ks1_threshold(cfg, R));
        const boost::math::normal bridge_law(-lambda_n * t, std::sqrt(t * (1 - t)));
        report.check(key + ".ks_bridge_pre_rotation",
                     stat::ks_one_sample(column(rows, T + i), [&](double x) { return boost::math::cdf(bridge_law, x); }),
                     "<", ks1_threshold(cfg, R));

        std::ostringstream density;
        density << "x,density\n";
        for (int k = 0; k <= 200; ++k) {
          const double x = -lambda_n + 1e-9 + k * 0.02;
          density << x << ',' << continuum::fp_marginal_density(lambda_n, t, x) << '\n';
        }
        report.tables["density_" + key] = density.str();
      }
      report.tables["qq_" + key] = qq_table(discrete, cont, "forest_walk,fp_bridge");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport exp_tree_sizes(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = "tree_sizes";
  report.parameters["config"] = to_json(cfg);
  const auto L = static_cast<std::size_t>(cfg.ranks);
  const auto R = static_cast<std::size_t>(cfg.replicates);
  const auto Rc = static_cast<std::size_t>(cfg.continuum_replicates);

  for (auto n : cfg.n_list) {
    const auto tn = tag_n(n);
    const auto s = family_sequence(cfg, n);
    describe_sequence(report, tn, s);
    const double lambda_n = static_cast<double>(s.c()) / (standard_deviation(s) * std::sqrt(static_cast<double>(n)));

    // Row: L normalised ranked sizes, then the size-sum mismatch.
    auto rows = run_replicates<std::vector<double>>(R, [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kSizeForests, r));
      const auto forest = sort_decreasing(sample_forest(s, rng));
      std::vector<double> row(L + 1, 0.0);
      std::int64_t total = 0;
      for (std::size_t l = 0; l < forest.trees.size(); ++l) {
        const auto size = static_cast<std::int64_t>(forest.trees[l].size());
        total += size;
        if (l < L) row[l] = static_cast<double>(size) / static_cast<double>(n);
      }
      row[L] = static_cast<double>(std::abs(total - n));
      return row;
    });
    // Row: L ranked excursion lengths, then their total.
    auto cont = run_replicates<std::vector<double>>(Rc, [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kSizeContinuum, r));
      const auto ex = continuum::excursions(continuum::sample_fp_bridge(lambda_n, cfg.excursion_grid_m, rng), false);
      std::vector<double> row(L + 1, 0.0);
      for (std::size_t l = 0; l < ex.size(); ++l) {
        if (l < L) row[l] = ex[l].length();
        row[L] += ex[l].length();
      }
      return row;
    });

    const auto mismatch = column(rows, L);
    report.check(tn + ".size_sum_mismatches", std::accumulate(mismatch.begin(), mismatch.end(), 0.0), "==", 0.0);
    for (std::size_t l = 0; l < L; ++l) {
      const auto key = tn + ".rank" + std::to_string(l + 1);
      const auto a = column(rows, l), b = column(cont, l);
      report.check(key + ".ks_two_sample", stat::ks_two_sample(a, b), "<", ks2_threshold(cfg, R, Rc));
      report.statistics[key + ".mean_forest"] = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(R);
      report.statistics[key + ".mean_continuum"] = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(Rc);
      report.tables["qq_" + key] = qq_table(a, b, "forest_size,excursion_length");
    }
    const auto sums = column(cont, L);
    const auto good = std::count_if(sums.begin(), sums.end(), [&](double x) { return x >= cfg.excursion_sum_min; });
    report.statistics[tn + ".excursion_sum_min"] = *std::min_element(sums.begin(), sums.end());
    report.statistics[tn + ".excursion_sum_median"] = stat::quantile(sums, 0.5);
    report.check(tn + ".excursion_sum_fraction", static_cast<double>(good) / static_cast<double>(Rc), ">=",
                 cfg.excursion_sum_fraction);
  }
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport exp_height_tail(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = "height_tail";
  report.parameters["config"] = to_json(cfg);
  const auto R = static_cast<std::size_t>(cfg.replicates);

  for (auto n : cfg.n_list) {
    const auto tn = tag_n(n);
    const auto s = family_sequence(cfg, n);
    if (s.c() != 1) throw Error(ErrorCode::NotATree, "height tail experiment needs c(s) = 1");
    describe_sequence(report, tn, s);
    const auto heights = run_replicates<std::int64_t>(R, [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kHeightTrees, r));
      return tree_height(sample_tree(s, rng));
    });

    std::ostringstream table;
    table << "m,empirical_survival,bound\n";
    double worst = -INFINITY;
    for (std::int64_t j = 1; j <= cfg.height_grid_points; ++j) {
      const double m = std::ceil(static_cast<double>(j) * cfg.height_grid_step * std::sqrt(static_cast<double>(n)));
      const auto hits = std::count_if(heights.begin(), heights.end(), [&](auto h) { return h >= m; });
      const double p = static_cast<double>(hits) / static_cast<double>(R);
      const double bound = height_tail_bound(s, m);
      const double allowed = bound + cfg.se_multiplier * stat::binomial_se(p, cfg.replicates);
      report.check(tn + fmt(".survival_m%.0f", m), p, "<=", allowed);
      worst = std::max(worst, p - allowed);
      table << m << ',' << p << ',' << bound << '\n';
    }
    report.statistics[tn + ".worst_excess"] = worst;
    std::vector<double> h(heights.begin(), heights.end());
    report.statistics[tn + ".height_median_over_sqrt_n"] = stat::quantile(h, 0.5) / std::sqrt(static_cast<double>(n));
    report.tables["height_tail_" + tn] = table.str();
  }
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport exp_variance_bound(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = "variance_bound";
  report.parameters["config"] = to_json(cfg);

  // Exhaustive: every distinct arrangement is equally likely under a uniform
  // permutation, so frequencies over distinct arrangements are exact.
  double worst_exhaustive = -INFINITY;
  std::int64_t cases = 0;
  for (const auto& s : enumerate_degree_sequences(cfg.exhaustive_max_n, cfg.exhaustive_max_degree)) {
    if (s.max_degree() == 0) continue;  // sigma^2(c) = Delta = 0: bound undefined
    auto c = child_vector(s);
    const auto n = static_cast<std::int64_t>(c.size());
    const auto sum_sq = stats(s).sigma2_s;
    std::vector<std::int64_t> hits(static_cast<std::size_t>(n * cfg.lambda_list.size()), 0);
    std::int64_t total = 0;
    do {
      ++total;
      std::int64_t prefix = 0;
      for (std::int64_t k = 1; k <= n; ++k) {
        prefix += c[k - 1] * c[k - 1];
        for (std::size_t li = 0; li < cfg.lambda_list.size(); ++li) {
          const double lambda = cfg.lambda_list[li];
          if (static_cast<double>(prefix) * static_cast<double>(n) >=
              lambda * static_cast<double>(k) * static_cast<double>(sum_sq)) {
            ++hits[static_cast<std::size_t>((k - 1)) * cfg.lambda_list.size() + li];
          }
        }
      }
    } while (std::next_permutation(c.begin(), c.end()));
    for (std::int64_t k = 1; k <= n; ++k) {
      for (std::size_t li = 0; li < cfg.lambda_list.size(); ++li) {
        const double p = static_cast<double>(hits[static_cast<std::size_t>(k - 1) * cfg.lambda_list.size() + li]) /
                         static_cast<double>(total);
        worst_exhaustive =
            std::max(worst_exhaustive, p - variance_bound(n, sum_sq, s.max_degree(), cfg.lambda_list[li], k));
        ++cases;
      }
    }
  }
  report.statistics["exhaustive.cases"] = static_cast<double>(cases);
  report.check("exhaustive.worst_excess", worst_exhaustive, "<=", 0.0);

  const auto R = static_cast<std::size_t>(cfg.replicates);
  for (auto n : cfg.n_list) {
    const auto tn = tag_n(n);
    const auto s = family_sequence(cfg, n);
    describe_sequence(report, tn, s);
    const auto sum_sq = stats(s).sigma2_s;
    const auto k_max = std::min<std::int64_t>(n, *std::max_element(cfg.k_list.begin(), cfg.k_list.end()));
    const auto d = child_vector(s);
    // Row: prefix sums of squares at each k in k_list (partial Fisher-Yates).
    auto rows = run_replicates<std::vector<double>>(R, [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kVariancePerms, r));
      auto c = d;
      for (std::int64_t i = 0; i < k_max; ++i) {
        const auto j = rng.uniform_int(i, n - 1);
        std::swap(c[i], c[j]);
      }
      std::vector<double> row;
      for (auto k : cfg.k_list) {
        std::int64_t prefix = 0;
        for (std::int64_t i = 0; i < std::min(k, n); ++i) prefix += c[i] * c[i];
        row.push_back(static_cast<double>(prefix));
      }
      return row;
    });

    std::ostringstream table;
    table << "k,lambda,empirical,bound\n";
    double worst = -INFINITY;
    for (std::size_t ki = 0; ki < cfg.k_list.size(); ++ki) {
      const auto k = std::min(cfg.k_list[ki], n);
      const auto sk = column(rows, ki);
      for (double lambda : cfg.lambda_list) {
        const double level = lambda * static_cast<double>(k) / static_cast<double>(n) * static_cast<double>(sum_sq);
        const double p = static_cast<double>(std::count_if(sk.begin(), sk.end(), [&](double x) { return x >= level; })) /
                         static_cast<double>(R);
        const double bound = variance_bound(n, sum_sq, s.max_degree(), lambda, k);
        const double allowed = bound + cfg.se_multiplier * stat::binomial_se(p, cfg.replicates);
        report.check(tn + ".k" + std::to_string(k) + fmt(".lambda%.2f", lambda), p, "<=", allowed);
        worst = std::max(worst, p - allowed);
        table << k << ',' << lambda << ',' << p << ',' << bound << '\n';
      }
    }
    report.statistics[tn + ".worst_excess"] = worst;
    report.tables["variance_bound_" + tn] = table.str();
  }
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport exp_degree_concentration(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = "degree_concentration";
  report.parameters["config"] = to_json(cfg);
  const auto R = static_cast<std::size_t>(cfg.replicates);

  // (i) martingale bound and (iii) the bad event B^{eps,i}, from uniform
  // permutations of d(s).
  for (auto n : cfg.n_list) {
    const auto tn = tag_n(n);
    const auto s = family_sequence(cfg, n);
    describe_sequence(report, tn, s);
    const double log_n = std::log(static_cast<double>(n));
    const auto x_min = static_cast<std::int64_t>(std::ceil(log_n * log_n * log_n));
    report.parameters["bad_event"][tn] = {{"epsilon", cfg.epsilon},
                                         {"x_min", x_min},
                                         {"precondition_met", std::sqrt(5.0) / log_n < cfg.epsilon && cfg.epsilon < 1}};
    std::vector<std::int64_t> degrees;
    for (auto [i, count] : s.counts()) degrees.push_back(i);
    const auto S = cfg.s_list.size();

    // Row per replicate: for each degree, S prefix-max deviations then the B flag.
    auto rows = run_replicates<std::vector<double>>(R, [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kConcentrationPerms, r));
      const auto c = children_of(sample_bridge(s, rng));
      std::vector<double> row;
      row.reserve(degrees.size() * (S + 1));
      for (auto i : degrees) {
        const double q = static_cast<double>(s.count(i)) / static_cast<double>(n);
        // prefix_max[j] = max_{j' <= j} |q - X_j' / (n - j')|
        std::vector<double> prefix_max(static_cast<std::size_t>(n));
        std::int64_t remaining = s.count(i), seen = 0;
        double running = 0.0;
        bool bad = false;
        for (std::int64_t j = 0; j < n; ++j) {
          running = std::max(running, std::abs(q - static_cast<double>(remaining) / static_cast<double>(n - j)));
          prefix_max[j] = running;
          if (c[j] == i) {
            --remaining;
            ++seen;
          }
          const auto x = j + 1;  // Y_x = seen
          if (x >= x_min && std::abs(static_cast<double>(seen) - q * static_cast<double>(x)) >=
                                cfg.epsilon * static_cast<double>(x)) {
            bad = true;
          }
        }
        for (auto sv : cfg.s_list) {
          const auto j = std::clamp<std::int64_t>(n - sv, 0, n - 1);
          row.push_back(prefix_max[j]);
        }
        row.push_back(bad ? 1.0 : 0.0);
      }
      return row;
    });

    std::ostringstream table;
    table << "degree,s,t,empirical,bound,bound_two_sided\n";
    double worst = -INFINITY, worst_two_sided = -INFINITY;
    for (std::size_t di = 0; di < degrees.size(); ++di) {
      const auto i = degrees[di];
      for (std::size_t si = 0; si < S; ++si) {
        const auto dev = column(rows, di * (S + 1) + si);
        for (double t : cfg.t_list) {
          const double p = static_cast<double>(std::count_if(dev.begin(), dev.end(), [&](double x) { return x >= t; })) /
                           static_cast<double>(R);
          const double bound = martingale_bound(static_cast<double>(cfg.s_list[si]), t);
          const double allowed = bound + cfg.se_multiplier * stat::binomial_se(p, cfg.replicates);
          report.check(tn + ".deg" + std::to_string(i) + ".s" + std::to_string(cfg.s_list[si]) + fmt(".t%.3f", t), p,
                       "<=", allowed);
          worst = std::max(worst, p - allowed);
          // union of the two one-sided martingale tails
          worst_two_sided = std::max(worst_two_sided, p - (allowed + bound));
          table << i << ',' << cfg.s_list[si] << ',' << t << ',' << p << ',' << bound << ',' << 2 * bound << '\n';
        }
      }
      const auto bad = column(rows, di * (S + 1) + S);
      const double p = std::accumulate(bad.begin(), bad.end(), 0.0) / static_cast<double>(R);
      const double bound = std::pow(static_cast<double>(n), -3.0);
      report.check(tn + ".deg" + std::to_string(i) + ".bad_event", p, "<=",
                   bound + cfg.se_multiplier * stat::binomial_se(p, cfg.replicates));
    }
    report.statistics[tn + ".martingale_worst_excess"] = worst;
    report.statistics[tn + ".martingale_worst_excess_two_sided"] = worst_two_sided;
    report.tables["martingale_" + tn] = table.str();
  }

  // (ii) degree proportions of the largest tree approach p as n grows.
  std::vector<double> medians;
  std::ostringstream table;
  table << "n,median_deviation,q90_deviation\n";
  for (auto n : cfg.forest_n_list) {
    const auto tn = tag_n(n);
    const auto s = family_sequence(cfg, n);
    const auto dev = run_replicates<double>(static_cast<std::size_t>(cfg.forest_replicates), [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kConcentrationForests, r));
      const auto forest = sort_decreasing(sample_forest(s, rng));
      const auto& largest = forest.trees.front();
      std::map<std::int64_t, std::int64_t> hist;
      for (auto k : largest.children) ++hist[k];
      double worst = 0.0;
      for (auto [i, count] : s.counts()) {
        const double p_tree = static_cast<double>(hist[i]) / static_cast<double>(largest.size());
        worst = std::max(worst, std::abs(p_tree - static_cast<double>(count) / static_cast<double>(n)));
      }
      return worst;
    });
    const double med = stat::quantile(dev, 0.5), q90 = stat::quantile(dev, 0.9);
    report.statistics["largest_tree." + tn + ".median_deviation"] = med;
    report.statistics["largest_tree." + tn + ".q90_deviation"] = q90;
    table << n << ',' << med << ',' << q90 << '\n';
    medians.push_back(med);
  }
  report.tables["largest_tree_proportions"] = table.str();
  if (medians.size() >= 2) {
    report.check("largest_tree.deviation_shrinks", medians.back(), "<", medians.front());
  }
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport exp_small_tree_heights(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = "small_tree_heights";
  report.parameters["config"] = to_json(cfg);
  const auto R = static_cast<std::size_t>(cfg.replicates);
  auto betas = cfg.beta_list;
  std::sort(betas.begin(), betas.end());

  for (auto n : cfg.n_list) {
    const auto tn = tag_n(n);
    const auto s = family_sequence(cfg, n);
    describe_sequence(report, tn, s);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    report.statistics[tn + ".delta_over_sqrt_n"] = static_cast<double>(s.max_degree()) / sqrt_n;

    auto rows = run_replicates<std::vector<double>>(R, [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kSmallTreeForests, r));
      const auto forest = sample_forest(s, rng);
      std::vector<double> row(betas.size(), 0.0);
      for (const auto& tree : forest.trees) {
        const auto size = static_cast<double>(tree.size());
        if (size >= betas.back() * static_cast<double>(n)) continue;
        const auto h = static_cast<double>(tree_height(tree));
        for (std::size_t b = 0; b < betas.size(); ++b) {
          if (size < betas[b] * static_cast<double>(n) && h > std::pow(betas[b], 0.125) * sqrt_n) row[b] = 1.0;
        }
      }
      return row;
    });

    std::ostringstream table;
    table << "beta,frequency\n";
    bool monotone = true;
    double previous = -1.0;
    for (std::size_t b = 0; b < betas.size(); ++b) {
      const auto flags = column(rows, b);
      const double freq = std::accumulate(flags.begin(), flags.end(), 0.0) / static_cast<double>(R);
      report.statistics[tn + fmt(".beta%.0e", betas[b])] = freq;
      table << betas[b] << ',' << freq << '\n';
      monotone = monotone && freq >= previous;
      previous = freq;
      if (b == 0) report.check(tn + fmt(".frequency_beta%.0e", betas[b]), freq, "<", cfg.rho);
    }
    report.statistics[tn + ".frequency_nondecreasing_in_beta"] = monotone ? 1.0 : 0.0;
    report.tables["small_tree_heights_" + tn] = table.str();
  }
  return report;
}

// ---------------------------------------------------------------------------

ExperimentReport exp_largest_tree_scaling(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.name = "largest_tree_scaling";
  report.parameters["config"] = to_json(cfg);
  const auto R = static_cast<std::size_t>(cfg.replicates);
  const auto Rc = static_cast<std::size_t>(cfg.continuum_replicates);

  std::vector<double> delta_medians;
  for (auto n : cfg.n_list) {
    const auto tn = tag_n(n);
    const auto s = family_sequence(cfg, n);
    describe_sequence(report, tn, s);
    const double sd = standard_deviation(s);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double lambda_n = static_cast<double>(s.c()) / (sd * sqrt_n);

    // Row: X = |T_1| / n, rescaled height, Delta_1 / sqrt|T_1|, Delta_1 > Delta(s).
    auto rows = run_replicates<std::vector<double>>(R, [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kScalingForests, r));
      const auto forest = sort_decreasing(sample_forest(s, rng));
      const auto& t = forest.trees.front();
      const auto delta = *std::max_element(t.children.begin(), t.children.end());
      const double size = static_cast<double>(t.size());
      return std::vector<double>{size / static_cast<double>(n),
                                 static_cast<double>(tree_height(t)) * sd / (2.0 * sqrt_n),
                                 static_cast<double>(delta) / std::sqrt(size),
                                 delta > s.max_degree() ? 1.0 : 0.0};
    });
    // Row: |gamma_1|, sqrt|gamma_1| max(e) for an independent excursion e,
    // and the height of the reflected bridge on gamma_1.
    auto cont = run_replicates<std::vector<double>>(Rc, [&](std::size_t r) {
      SeededRng rng(cfg.seed, stream_key(kScalingContinuum, r));
      const auto reflected = continuum::reflect_at_min(continuum::sample_fp_bridge(lambda_n, cfg.grid_m, rng));
      const auto ex = continuum::excursions(reflected, true);
      SeededRng erng(cfg.seed, stream_key(kScalingExcursions, r));
      const auto e = continuum::sample_brownian_excursion(cfg.grid_m, erng);
      const double top = *std::max_element(e.values.begin(), e.values.end());
      if (ex.empty()) return std::vector<double>{0.0, 0.0, 0.0};
      return std::vector<double>{ex.front().length(), std::sqrt(ex.front().length()) * top,
                                 continuum::excursion_tree_stats(reflected, ex.front()).height};
    });

    const auto size_d = column(rows, 0), height_d = column(rows, 1), delta_d = column(rows, 2),
               exceed = column(rows, 3);
    const auto size_c = column(cont, 0), height_c = column(cont, 1), height_direct = column(cont, 2);
    report.check(tn + ".ks_height", stat::ks_two_sample(height_d, height_c), "<", ks2_threshold(cfg, R, Rc));
    report.statistics[tn + ".ks_height_vs_reflected_excursion"] = stat::ks_two_sample(height_d, height_direct);
    report.statistics[tn + ".ks_continuum_routes"] = stat::ks_two_sample(height_c, height_direct);
    report.statistics[tn + ".ks_size"] = stat::ks_two_sample(size_d, size_c);
    report.check(tn + ".delta_exceeds_max_degree", std::accumulate(exceed.begin(), exceed.end(), 0.0), "==", 0.0);

    const double med_delta = stat::quantile(delta_d, 0.5);
    delta_medians.push_back(med_delta);
    report.statistics[tn + ".delta_over_sqrt_size.median"] = med_delta;
    report.statistics[tn + ".delta_over_sqrt_size.q90"] = stat::quantile(delta_d, 0.9);

    const auto median_size =
        std::max<std::int64_t>(1, std::llround(stat::quantile(size_d, 0.5) * static_cast<double>(n)));
    const auto bounds = ghp::discrete_coupling_bounds(median_size, sd);
    report.statistics[tn + ".coupling.d_H"] = bounds.d_H;
    report.statistics[tn + ".coupling.d_P_bound"] = bounds.d_P_bound;
    report.tables["qq_height_" + tn] = qq_table(height_d, height_c, "forest_height,excursion_height");
  }
  if (delta_medians.size() >= 2) {
    report.check("delta_over_sqrt_size_shrinks", delta_medians.back(), "<=", delta_medians.front());
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<DegreeSequence> enumerate_degree_sequences(std::int64_t max_n, std::int64_t max_degree) {
  std::vector<DegreeSequence> out;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(max_degree) + 1, 0);
  // Odometer over count vectors with total <= max_n.
  auto emit = [&] {
    std::int64_t n = 0, edges = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      n += counts[i];
      edges += static_cast<std::int64_t>(i) * counts[i];
    }
    if (n >= 1 && n - edges >= 1) {
      DegreeSequence::Counts map;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) map[static_cast<std::int64_t>(i)] = counts[i];
      }
      out.push_back(DegreeSequence::validate(map));
    }
  };
  auto recurse = [&](auto&& self, std::size_t i, std::int64_t budget) -> void {
    if (i == counts.size()) {
      emit();
      return;
    }
    for (std::int64_t k = 0; k <= budget; ++k) {
      counts[i] = k;
      self(self, i + 1, budget - k);
    }
    counts[i] = 0;
  };
  recurse(recurse, 0, max_n);
  return out;
}

ExperimentReport verify_exhaustive(std::int64_t max_n, std::int64_t max_degree) {
  ExperimentReport report;
  report.name = "verify";
  report.parameters["max_n"] = max_n;
  report.parameters["max_degree"] = max_degree;
  const auto family = enumerate_degree_sequences(max_n, max_degree);

  auto results = run_replicates<std::vector<double>>(family.size(), [&](std::size_t i) {
    const auto& s = family[i];
    const auto bridges = enumerate_bridges(s, max_n);
    const auto fps = enumerate_fp_bridges(s, max_n);
    const auto multinomial = multinomial_count(s);
    const bool bridge_count = bridges.size() == multinomial;
    // |F(s)| n = c |Lambda(s)|, in integers.
    const bool fp_count = static_cast<std::uint64_t>(fps.size()) * static_cast<std::uint64_t>(s.n()) ==
                          static_cast<std::uint64_t>(s.c()) * multinomial;
    const bool n_to_1 = verify_n_to_one(s, max_n).ok;
    bool codec = true;
    for (const auto& p : fps) {
      const auto f = decode(p);
      codec = codec && encode(f) == p && decode(encode(f)) == f &&
              static_cast<std::int64_t>(f.num_trees()) == s.c() && f.degree_sequence() == s;
    }
    const auto marked = verify_marked_maps(s, max_n);
    return std::vector<double>{bridge_count ? 0.0 : 1.0, fp_count ? 0.0 : 1.0, n_to_1 ? 0.0 : 1.0,
                               codec ? 0.0 : 1.0, marked.g_c_to_1 && marked.h_n_to_1 ? 0.0 : 1.0,
                               static_cast<double>(bridges.size()), static_cast<double>(fps.size())};
  });

  static const char* names[] = {"bridge_count_failures", "fp_count_failures", "n_to_1_failures",
                                "codec_failures", "marked_map_failures"};
  for (std::size_t k = 0; k < 5; ++k) {
    const auto col = column(results, k);
    report.check(names[k], std::accumulate(col.begin(), col.end(), 0.0), "==", 0.0);
  }
  report.statistics["sequences"] = static_cast<double>(family.size());
  const auto b = column(results, 5), f = column(results, 6);
  report.statistics["bridges_total"] = std::accumulate(b.begin(), b.end(), 0.0);
  report.statistics["fp_bridges_total"] = std::accumulate(f.begin(), f.end(), 0.0);
  return report;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"walk_convergence", "tree_sizes",          "height_tail",
                                              "variance_bound",   "degree_concentration", "small_tree_heights",
                                              "largest_tree_scaling"};
  return names;
}

ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "walk_convergence") return exp_walk_convergence(cfg);
  if (name == "tree_sizes") return exp_tree_sizes(cfg);
  if (name == "height_tail") return exp_height_tail(cfg);
  if (name == "variance_bound") return exp_variance_bound(cfg);
  if (name == "degree_concentration") return exp_degree_concentration(cfg);
  if (name == "small_tree_heights") return exp_small_tree_heights(cfg);
  if (name == "largest_tree_scaling") return exp_largest_tree_scaling(cfg);
  throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + name + "'");
}

}  // namespace pf::experiments
