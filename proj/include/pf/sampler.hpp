#pragma once

#include "pf/degrees.hpp"
#include "pf/forests.hpp"
#include "pf/paths.hpp"
#include "pf/rng.hpp"

namespace pf {

/// Uniformly permuted d(s) (Fisher-Yates), as a lattice bridge.
LatticePath sample_bridge(const DegreeSequence& s, SeededRng& rng);

/// Uniform first-passage bridge: a uniform bridge rotated at the first passage
/// of (min + nu) with nu uniform on {0, ..., c - 1}. Exact, linear time.
LatticePath sample_fp_bridge(const DegreeSequence& s, SeededRng& rng);

/// Uniformly random plane forest with degree sequence s.
PlaneForest sample_forest(const DegreeSequence& s, SeededRng& rng);

/// Uniformly random plane tree; throws Error{NotATree} unless c(s) = 1.
PlaneTree sample_tree(const DegreeSequence& s, SeededRng& rng);

}  // namespace pf
