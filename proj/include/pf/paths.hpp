#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "pf/degrees.hpp"

namespace pf {

inline constexpr std::int64_t kDefaultEnumerationCap = 10;

/// Integer-increment walk W on [0, n] with W(0) = 0 and steps >= -1.
struct LatticePath {
  std::vector<std::int64_t> increments;

  std::size_t size() const noexcept { return increments.size(); }
  /// W(0..n) by prefix sums.
  std::vector<std::int64_t> values() const;
  std::int64_t endpoint() const;
  std::int64_t minimum() const;

  auto operator<=>(const LatticePath&) const = default;
};

/// Increments c_i - 1 of a child-count sequence.
LatticePath walk_from_children(std::span<const std::int64_t> children);
std::vector<std::int64_t> children_of(const LatticePath& p);

/// theta_u: increments rotated left by u, 0 <= u <= n.
LatticePath cyclic_shift(const LatticePath& p, std::int64_t u);

/// Smallest j with W(j) <= y, or 0 when y < min W.
std::int64_t first_passage_index(const LatticePath& p, std::int64_t y);

/// W(n) = -c with c >= 1 and W(j) > -c for every j < n.
bool is_first_passage_bridge(const LatticePath& p);

/// f(b, j) = theta_{t(min b + j)}(b) for a bridge b ending at -c, 0 <= j < c.
LatticePath rotate_to_first_passage(const LatticePath& bridge, std::int64_t j);

/// All distinct rearrangements of d(s), in lexicographic increment order.
std::vector<LatticePath> enumerate_bridges(const DegreeSequence& s,
                                           std::int64_t cap = kDefaultEnumerationCap);
std::vector<LatticePath> enumerate_fp_bridges(const DegreeSequence& s,
                                              std::int64_t cap = kDefaultEnumerationCap);

/// n!/prod s^(i)! computed exactly (throws Overflow past 64 bits).
std::uint64_t multinomial_count(const DegreeSequence& s);

struct NToOneReport {
  std::map<LatticePath, std::int64_t> preimage_counts;
  bool ok;
};

/// Applies f to every (b, j) in Lambda(s) x {0..c-1}.
NToOneReport verify_n_to_one(const DegreeSequence& s, std::int64_t cap = kDefaultEnumerationCap);

struct BridgeStats {
  double mu;
  double tau2;
  std::int64_t sum_sq_increments;
};

/// Mean and spread of the scaled increments (c_i - 1) / (sigma sqrt n).
BridgeStats bridge_statistics(std::span<const std::int64_t> children, double sigma_p);

nlohmann::json to_json(const LatticePath& p);
LatticePath lattice_path_from_json(const nlohmann::json& j);

}  // namespace pf
