#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "pf/degrees.hpp"
#include "pf/paths.hpp"

namespace pf {

/// Plane tree as the child counts of its vertices in depth-first order.
struct PlaneTree {
  std::vector<std::int64_t> children;

  std::size_t size() const noexcept { return children.size(); }
  /// Lukasiewicz condition: increments sum to -1, strict prefixes stay >= 0.
  bool valid() const;

  auto operator<=>(const PlaneTree&) const = default;
};

struct PlaneForest {
  std::vector<PlaneTree> trees;

  std::size_t num_trees() const noexcept { return trees.size(); }
  std::size_t num_vertices() const;
  /// Concatenated DFS child counts.
  std::vector<std::int64_t> children() const;
  DegreeSequence degree_sequence() const;

  auto operator<=>(const PlaneForest&) const = default;
};

/// Splits a first-passage bridge at its successive new minima.
/// Throws Error{NotFirstPassage}.
PlaneForest decode(const LatticePath& p);
LatticePath encode(const PlaneForest& f);

/// Decreasing size; ties by lexicographic child sequence, then original order.
PlaneForest sort_decreasing(const PlaneForest& f);

/// g((F, v)): DFS child counts rotated to start at vertex v (1-based).
std::vector<std::int64_t> mark_to_child_sequence(const PlaneForest& f, std::int64_t v);

struct MarkedMapReport {
  std::int64_t marked_forests;
  std::int64_t child_sequences;
  bool g_c_to_1;
  bool h_n_to_1;
};

MarkedMapReport verify_marked_maps(const DegreeSequence& s,
                                   std::int64_t cap = kDefaultEnumerationCap);

/// Depth of each vertex in DFS order, root depth 0.
std::vector<std::int64_t> depths(const PlaneTree& t);
/// Parent index of each vertex in DFS order; -1 for the root.
std::vector<std::int64_t> parents(const PlaneTree& t);

std::int64_t tree_height(const PlaneTree& t);

struct TreeMetrics {
  std::int64_t size;
  std::int64_t height;
  std::int64_t diameter;
  DegreeSequence degree_histogram;
  std::int64_t sigma2;  // sum of squared child counts
};

TreeMetrics tree_metrics(const PlaneTree& t);

/// Distance-to-root of the unit-speed depth-first traversal, 2(|T| - 1) steps.
LatticePath contour_function(const PlaneTree& t);

nlohmann::json to_json(const PlaneForest& f);
PlaneForest forest_from_json(const nlohmann::json& j);

}  // namespace pf
