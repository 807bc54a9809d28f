#include "pf/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pf/continuum.hpp"
#include "pf/sampler.hpp"

namespace pf {

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::vector<double>> forest_walk_marginals(const DegreeSequence& s, std::span<const double> times,
                                                       std::uint64_t seed, std::uint32_t part,
                                                       std::size_t replicates, Execution exec) {
  const double scale = 1.0 / (std::sqrt(stats(s).variance_p * static_cast<double>(s.n())));
  const double n = static_cast<double>(s.n());
  return run_replicates<std::vector<double>>(
      replicates,
      [&](std::size_t r) {
        SeededRng rng(seed, stream_key(part, r));
        const auto w = sample_fp_bridge(s, rng).values();
        std::vector<double> row;
        row.reserve(times.size());
        for (double t : times) {
          const double x = t * n;
          const auto k = std::min<std::size_t>(static_cast<std::size_t>(x), w.size() - 2);
          const double frac = x - static_cast<double>(k);
          row.push_back(scale * (static_cast<double>(w[k]) + frac * static_cast<double>(w[k + 1] - w[k])));
        }
        return row;
      },
      exec);
}

std::vector<std::vector<double>> fp_bridge_marginals(double lambda, std::int64_t m, std::span<const double> times,
                                                     std::uint64_t seed, std::uint32_t part,
                                                     std::size_t replicates, Execution exec) {
  return run_replicates<std::vector<double>>(
      replicates,
      [&](std::size_t r) {
        SeededRng rng(seed, stream_key(part, r));
        const auto p = continuum::sample_fp_bridge(lambda, m, rng);
        std::vector<double> row;
        row.reserve(times.size());
        for (double t : times) row.push_back(p.at(t));
        return row;
      },
      exec);
}

}  // namespace pf
