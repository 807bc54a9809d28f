#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "pf/rng.hpp"

namespace pf::continuum {

/// Continuous path on [0, 1] sampled at k / m, k = 0..m, read as piecewise
/// linear. values[0] == 0.
struct GridPath {
  std::vector<double> values;

  std::int64_t cells() const noexcept { return static_cast<std::int64_t>(values.size()) - 1; }
  double dt() const noexcept { return 1.0 / static_cast<double>(cells()); }
  /// Linear interpolation at time t in [0, 1].
  double at(double t) const;
  double minimum() const;
};

/// B^br_l on m cells: a Gaussian random walk bridged to end at exactly -l.
GridPath sample_brownian_bridge(double l, std::int64_t m, SeededRng& rng);

/// theta_u on the grid: x(t + u) - x(u), continued through x(1) past the end.
GridPath cyclic_shift(const GridPath& p, std::int64_t u);

struct FirstPassageDraw {
  GridPath path;
  std::int64_t shift;  // grid index U
  double nu;
};

/// F^br_lambda via rotation of B^br_lambda at the first grid time reaching
/// min + nu, nu ~ Uniform[0, lambda].
FirstPassageDraw sample_fp_bridge_with_shift(double lambda, std::int64_t m, SeededRng& rng);
GridPath sample_fp_bridge(double lambda, std::int64_t m, SeededRng& rng);

/// Normalised Brownian excursion from a standard bridge rotated at its argmin.
GridPath sample_brownian_excursion(std::int64_t m, SeededRng& rng);

/// Density of F^br_lambda(s) at x. Zero for x <= -lambda.
/// Throws Error{DomainError} for s outside (0, 1) or lambda <= 0.
double fp_marginal_density(double lambda, double s, double x);
/// Integral of the density over (-lambda, x].
double fp_marginal_cdf(double lambda, double s, double x);

/// x(k) - min_{j <= k} x(j).
GridPath reflect_at_min(const GridPath& p);

struct Excursion {
  double left;
  double right;
  double length() const noexcept { return right - left; }
};

/// Ranked by decreasing length, ties by earlier left endpoint.
using ExcursionList = std::vector<Excursion>;

/// Maximal intervals on which the (reflected) interpolant is strictly
/// positive; endpoints are exact zero crossings of the interpolant.
ExcursionList excursions(const GridPath& p, bool reflected);

struct ExcursionTreeStats {
  double height;
  double length;
};

/// Height and mass of the real tree coded by `values` sampled with spacing dt.
ExcursionTreeStats excursion_tree_stats(std::span<const double> values, double dt);
/// Same, for the part of `p` inside `e`.
ExcursionTreeStats excursion_tree_stats(const GridPath& p, const Excursion& e);

void write_csv(std::ostream& os, const GridPath& p);
nlohmann::json to_json(const ExcursionList& list);

}  // namespace pf::continuum
