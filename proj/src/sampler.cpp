#include "pf/sampler.hpp"

#include <string>
#include <utility>

#include "pf/error.hpp"

namespace pf {

LatticePath sample_bridge(const DegreeSequence& s, SeededRng& rng) {
  auto d = child_vector(s);
  for (std::size_t i = d.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    std::swap(d[i - 1], d[j]);
  }
  return walk_from_children(d);
}

LatticePath sample_fp_bridge(const DegreeSequence& s, SeededRng& rng) {
  auto bridge = sample_bridge(s, rng);
  const auto nu = rng.uniform_int(0, s.c() - 1);
  return rotate_to_first_passage(bridge, nu);
}

PlaneForest sample_forest(const DegreeSequence& s, SeededRng& rng) {
  return decode(sample_fp_bridge(s, rng));
}

PlaneTree sample_tree(const DegreeSequence& s, SeededRng& rng) {
  if (s.c() != 1) {
    throw Error(ErrorCode::NotATree, "c(s) = " + std::to_string(s.c()) + ", need 1");
  }
  return std::move(sample_forest(s, rng).trees.front());
}

}  // namespace pf
