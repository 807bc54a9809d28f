#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pf/degrees.hpp"
#include "pf/rng.hpp"

namespace pf {

enum class Execution { Serial, Parallel };

/// out[r] = fn(r) for r in [0, count). Each call must derive its randomness
/// from r alone; both paths then produce identical output.
template <class T, class Fn>
std::vector<T> run_replicates(std::size_t count, Fn&& fn, Execution exec = Execution::Parallel) {
  std::vector<T> out(count);
  if (exec == Execution::Serial) {
    for (std::size_t r = 0; r < count; ++r) out[r] = fn(r);
    return out;
  }
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t r = 0; r < n; ++r) out[static_cast<std::size_t>(r)] = fn(static_cast<std::size_t>(r));
  return out;
}

int worker_count();

/// Scaled Lukasiewicz walk W(t n) / (std sqrt n) of uniform forests at the
/// given times, one row per replicate.
std::vector<std::vector<double>> forest_walk_marginals(const DegreeSequence& s, std::span<const double> times,
                                                       std::uint64_t seed, std::uint32_t part,
                                                       std::size_t replicates, Execution exec);

/// F^br_lambda at the given times, one row per draw.
std::vector<std::vector<double>> fp_bridge_marginals(double lambda, std::int64_t m, std::span<const double> times,
                                                     std::uint64_t seed, std::uint32_t part,
                                                     std::size_t replicates, Execution exec);

}  // namespace pf
