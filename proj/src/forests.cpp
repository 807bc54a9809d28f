#include "pf/forests.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "pf/error.hpp"

namespace pf {

bool PlaneTree::valid() const {
  std::int64_t w = 0;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i] < 0) return false;
    w += children[i] - 1;
    if (i + 1 < children.size() && w < 0) return false;
  }
  return !children.empty() && w == -1;
}

std::size_t PlaneForest::num_vertices() const {
  std::size_t n = 0;
  for (const auto& t : trees) n += t.size();
  return n;
}

std::vector<std::int64_t> PlaneForest::children() const {
  std::vector<std::int64_t> out;
  out.reserve(num_vertices());
  for (const auto& t : trees) out.insert(out.end(), t.children.begin(), t.children.end());
  return out;
}

DegreeSequence PlaneForest::degree_sequence() const {
  return DegreeSequence::from_children(children());
}

PlaneForest decode(const LatticePath& p) {
  if (!is_first_passage_bridge(p)) {
    throw Error(ErrorCode::NotFirstPassage, "path is not a first-passage bridge");
  }
  PlaneForest f;
  f.trees.reserve(static_cast<std::size_t>(-p.endpoint()));
  std::int64_t w = 0, floor = 0;
  PlaneTree current;
  for (auto x : p.increments) {
    current.children.push_back(x + 1);
    w += x;
    if (w < floor) {  // new minimum: the current tree is fully explored
      floor = w;
      f.trees.push_back(std::move(current));
      current = {};
    }
  }
  return f;
}

LatticePath encode(const PlaneForest& f) {
  auto c = f.children();
  return walk_from_children(c);
}

PlaneForest sort_decreasing(const PlaneForest& f) {
  PlaneForest out = f;
  std::stable_sort(out.trees.begin(), out.trees.end(), [](const PlaneTree& a, const PlaneTree& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.children < b.children;
  });
  return out;
}

std::vector<std::int64_t> mark_to_child_sequence(const PlaneForest& f, std::int64_t v) {
  auto c = f.children();
  const auto n = static_cast<std::int64_t>(c.size());
  if (v < 1 || v > n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "mark " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
  }
  std::rotate(c.begin(), c.begin() + (v - 1), c.end());
  return c;
}

MarkedMapReport verify_marked_maps(const DegreeSequence& s, std::int64_t cap) {
  std::map<std::vector<std::int64_t>, std::int64_t> g_preimages;
  for (const auto& b : enumerate_bridges(s, cap)) g_preimages.emplace(children_of(b), 0);

  MarkedMapReport report{0, static_cast<std::int64_t>(g_preimages.size()), true, true};
  for (const auto& fp : enumerate_fp_bridges(s, cap)) {
    const auto forest = decode(fp);
    const auto n = static_cast<std::int64_t>(forest.num_vertices());
    // h forgets the mark, so each forest has exactly one preimage per vertex.
    if (n != s.n()) report.h_n_to_1 = false;
    for (std::int64_t v = 1; v <= n; ++v) {
      ++report.marked_forests;
      auto it = g_preimages.find(mark_to_child_sequence(forest, v));
      if (it == g_preimages.end()) {
        report.g_c_to_1 = false;
      } else {
        ++it->second;
      }
    }
  }
  for (const auto& [seq, count] : g_preimages) {
    if (count != s.c()) report.g_c_to_1 = false;
  }
  return report;
}

std::vector<std::int64_t> parents(const PlaneTree& t) {
  std::vector<std::int64_t> parent(t.size(), -1);
  // Stack of (vertex, remaining children to attach).
  std::vector<std::pair<std::int64_t, std::int64_t>> stack;
  for (std::size_t i = 0; i < t.size(); ++i) {
    while (!stack.empty() && stack.back().second == 0) stack.pop_back();
    if (!stack.empty()) {
      parent[i] = stack.back().first;
      --stack.back().second;
    }
    stack.emplace_back(static_cast<std::int64_t>(i), t.children[i]);
  }
  return parent;
}

std::vector<std::int64_t> depths(const PlaneTree& t) {
  const auto parent = parents(t);
  std::vector<std::int64_t> depth(t.size(), 0);
  // Parents precede children in DFS order.
  for (std::size_t i = 1; i < t.size(); ++i) depth[i] = depth[static_cast<std::size_t>(parent[i])] + 1;
  return depth;
}

std::int64_t tree_height(const PlaneTree& t) {
  // Depth of vertex i equals the number of open ancestors, which the
  // Lukasiewicz walk tracks implicitly; a stack of pending child counts suffices.
  std::int64_t height = 0;
  std::vector<std::int64_t> pending;
  for (auto k : t.children) {
    while (!pending.empty() && pending.back() == 0) pending.pop_back();
    if (!pending.empty()) --pending.back();
    height = std::max<std::int64_t>(height, static_cast<std::int64_t>(pending.size()));
    pending.push_back(k);
  }
  return height;
}

namespace {

// Farthest vertex from `source` in the tree given by adjacency lists.
std::pair<std::size_t, std::int64_t> farthest(const std::vector<std::vector<std::size_t>>& adj,
                                              std::size_t source) {
  std::vector<std::int64_t> dist(adj.size(), -1);
  std::vector<std::size_t> queue{source};
  dist[source] = 0;
  std::size_t best = source;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u = queue[head];
    if (dist[u] > dist[best]) best = u;
    for (auto v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return {best, dist[best]};
}

}  // namespace

TreeMetrics tree_metrics(const PlaneTree& t) {
  const auto parent = parents(t);
  std::vector<std::vector<std::size_t>> adj(t.size());
  for (std::size_t i = 1; i < t.size(); ++i) {
    const auto p = static_cast<std::size_t>(parent[i]);
    adj[i].push_back(p);
    adj[p].push_back(i);
  }
  const auto [end, ignored] = farthest(adj, 0);
  const auto [other, diameter] = farthest(adj, end);

  std::int64_t sigma2 = 0;
  for (auto k : t.children) sigma2 += k * k;
  return TreeMetrics{static_cast<std::int64_t>(t.size()), tree_height(t), diameter,
                     DegreeSequence::from_children(t.children), sigma2};
}

LatticePath contour_function(const PlaneTree& t) {
  LatticePath contour;
  contour.increments.reserve(2 * (t.size() - 1));
  std::vector<std::int64_t> pending;
  for (auto k : t.children) {
    while (!pending.empty() && pending.back() == 0) {
      pending.pop_back();
      contour.increments.push_back(-1);
    }
    if (!pending.empty()) {
      --pending.back();
      contour.increments.push_back(+1);
    }
    pending.push_back(k);
  }
  // Walk back up to the root; the root's own pending entry is not an edge.
  while (pending.size() > 1) {
    pending.pop_back();
    contour.increments.push_back(-1);
  }
  return contour;
}

nlohmann::json to_json(const PlaneForest& f) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : f.trees) trees.push_back(t.children);
  return {{"trees", trees}};
}

PlaneForest forest_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("trees") || !j["trees"].is_array() || j["trees"].empty()) {
    throw Error(ErrorCode::ParseError, "expected {\"trees\": [[...], ...]}");
  }
  PlaneForest f;
  for (const auto& tj : j["trees"]) {
    PlaneTree t;
    try {
      t.children = tj.get<std::vector<std::int64_t>>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::ParseError, "tree must be an array of child counts");
    }
    if (!t.valid()) throw Error(ErrorCode::ParseError, "child counts do not form a plane tree");
    f.trees.push_back(std::move(t));
  }
  return f;
}

}  // namespace pf
