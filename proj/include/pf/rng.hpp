#pragma once

#include <cstdint>
#include <random>

namespace pf {

/// Reproducible random stream keyed by (seed, stream_id).
///
/// Parallel replicates each construct their own stream from the replicate
/// index, so results do not depend on scheduling.
class SeededRng {
 public:
  using result_type = std::mt19937_64::result_type;

  SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform real in [lo, hi).
  double uniform_real(double lo, double hi);
  double normal(double mean = 0.0, double stddev = 1.0);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Stream id for replicate `index` of experiment part `part`.
constexpr std::uint64_t stream_key(std::uint32_t part, std::uint64_t index) {
  return (static_cast<std::uint64_t>(part) << 40) ^ index;
}

}  // namespace pf
