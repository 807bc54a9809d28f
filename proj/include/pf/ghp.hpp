#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pf/forests.hpp"

namespace pf::ghp {

inline constexpr std::size_t kExactGhCap = 8;

/// Rooted finite metric space with a mass on each point.
class FiniteMetricMeasureSpace {
 public:
  /// `distances` is row-major size x size. Throws Error{InvalidMetric} on
  /// asymmetry, non-zero diagonal, negative entries or a triangle violation
  /// beyond 1e-12.
  FiniteMetricMeasureSpace(std::size_t size, std::vector<double> distances, std::size_t root,
                           std::vector<double> masses);

  std::size_t size() const noexcept { return size_; }
  std::size_t root() const noexcept { return root_; }
  double distance(std::size_t i, std::size_t j) const { return distances_[i * size_ + j]; }
  const std::vector<double>& masses() const noexcept { return masses_; }

 private:
  std::size_t size_;
  std::vector<double> distances_;
  std::size_t root_;
  std::vector<double> masses_;
};

/// Vertices of t with graph distance scaled by sigma_p / (2 sqrt(n_total)),
/// mass 1 / n_total each.
FiniteMetricMeasureSpace scaled_tree_space(const PlaneTree& t, std::int64_t n_total, double sigma_p);

/// Rooted Gromov-Hausdorff distance: half the least distortion of a
/// correspondence containing the root pair. Throws Error{TooLarge} past
/// kExactGhCap points on either side.
double rooted_gh_exact(const FiniteMetricMeasureSpace& a, const FiniteMetricMeasureSpace& b);

/// Piecewise-linear function through (times[k], values[k]), times increasing;
/// zero outside [times.front(), times.back()].
struct PiecewiseLinear {
  std::vector<double> times;
  std::vector<double> values;

  double at(double t) const;
  /// sup{t : f(t) > 0}, or 0 when f vanishes.
  double support_end() const;
};

/// Contour of t on [0, 1]: scale * C(2(|t| - 1) u) with scale
/// sigma_p / (2 sqrt(n_total)).
PiecewiseLinear rescaled_contour(const PlaneTree& t, std::int64_t n_total, double sigma_p);

/// 6 ||f - g||_inf + |sigma_f - sigma_g|, sup taken exactly over merged breakpoints.
double ghp_coding_bound(const PiecewiseLinear& f, const PiecewiseLinear& g);

struct CouplingBounds {
  double d_H;
  double d_P_bound;
};

/// Hausdorff and Prokhorov terms between a size-n tree and the real tree of
/// its rescaled contour.
CouplingBounds discrete_coupling_bounds(std::int64_t n, double sigma_p);

void write_csv(std::ostream& os, const FiniteMetricMeasureSpace& space);

}  // namespace pf::ghp
