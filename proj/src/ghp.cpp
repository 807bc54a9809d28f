#include "pf/ghp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "pf/error.hpp"

namespace pf::ghp {

FiniteMetricMeasureSpace::FiniteMetricMeasureSpace(std::size_t size, std::vector<double> distances,
                                                   std::size_t root, std::vector<double> masses)
    : size_(size), distances_(std::move(distances)), root_(root), masses_(std::move(masses)) {
  constexpr double tol = 1e-12;
  if (size_ == 0 || distances_.size() != size_ * size_ || masses_.size() != size_ || root_ >= size_) {
    throw Error(ErrorCode::InvalidMetric, "inconsistent dimensions");
  }
  for (auto w : masses_) {
    if (!std::isfinite(w) || w < 0) throw Error(ErrorCode::InvalidMetric, "masses must be finite and >= 0");
  }
  for (std::size_t i = 0; i < size_; ++i) {
    if (distance(i, i) != 0.0) throw Error(ErrorCode::InvalidMetric, "non-zero diagonal");
    for (std::size_t j = 0; j < size_; ++j) {
      const double d = distance(i, j);
      if (!std::isfinite(d) || d < 0 || std::abs(d - distance(j, i)) > tol) {
        throw Error(ErrorCode::InvalidMetric, "distances must be finite, non-negative and symmetric");
      }
      for (std::size_t k = 0; k < size_; ++k) {
        if (d > distance(i, k) + distance(k, j) + tol) {
          throw Error(ErrorCode::InvalidMetric, "triangle inequality violated");
        }
      }
    }
  }
}

FiniteMetricMeasureSpace scaled_tree_space(const PlaneTree& t, std::int64_t n_total, double sigma_p) {
  const std::size_t n = t.size();
  if (n == 0 || n_total < static_cast<std::int64_t>(n) || !(sigma_p > 0)) {
    throw Error(ErrorCode::InvalidArgument, "need a non-empty tree, n_total >= |t| and sigma_p > 0");
  }
  const double scale = sigma_p / (2.0 * std::sqrt(static_cast<double>(n_total)));
  const auto parent = parents(t);
  const auto depth = depths(t);
  // d(i, j) = depth i + depth j - 2 depth(lca); ancestors precede descendants
  // in DFS order, so climbing the deeper vertex first finds the lca.
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto a = static_cast<std::int64_t>(i), b = static_cast<std::int64_t>(j);
      while (a != b) {
        if (depth[a] >= depth[b]) a = parent[a];
        else b = parent[b];
      }
      const double d = static_cast<double>(depth[i] + depth[j] - 2 * depth[a]) * scale;
      dist[i * n + j] = dist[j * n + i] = d;
    }
  }
  return FiniteMetricMeasureSpace(n, std::move(dist), 0,
                                  std::vector<double>(n, 1.0 / static_cast<double>(n_total)));
}

namespace {

// Branch and bound over correspondences R = graph(phi) U graph(psi)^T with
// phi: A -> B, psi: B -> A, which are the minimal correspondences; the
// distortion only grows with R, so the optimum is attained among them.
class CorrespondenceSearch {
 public:
  CorrespondenceSearch(const FiniteMetricMeasureSpace& a, const FiniteMetricMeasureSpace& b)
      : a_(a), b_(b) {}

  double run() {
    pairs_.push_back({a_.root(), b_.root()});
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i != a_.root()) free_a_.push_back(i);
    }
    for (std::size_t j = 0; j < b_.size(); ++j) {
      if (j != b_.root()) free_b_.push_back(j);
    }
    best_ = std::numeric_limits<double>::infinity();
    extend(0, 0.0);
    return best_;
  }

 private:
  void extend(std::size_t step, double distortion) {
    if (distortion >= best_) return;
    if (step == free_a_.size() + free_b_.size()) {
      best_ = distortion;
      return;
    }
    const bool from_a = step < free_a_.size();
    const std::size_t fixed = from_a ? free_a_[step] : free_b_[step - free_a_.size()];
    const std::size_t options = from_a ? b_.size() : a_.size();

    // Try candidates in order of the distortion they add, best first.
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(options);
    for (std::size_t o = 0; o < options; ++o) {
      const auto pair = from_a ? std::pair{fixed, o} : std::pair{o, fixed};
      ranked.push_back({added(pair), o});
    }
    std::sort(ranked.begin(), ranked.end());
    for (auto [cost, o] : ranked) {
      const double next = std::max(distortion, cost);
      if (next >= best_) break;
      pairs_.push_back(from_a ? std::pair{fixed, o} : std::pair{o, fixed});
      extend(step + 1, next);
      pairs_.pop_back();
    }
  }

  double added(std::pair<std::size_t, std::size_t> p) const {
    double worst = 0.0;
    for (auto [x, y] : pairs_) {
      worst = std::max(worst, std::abs(a_.distance(p.first, x) - b_.distance(p.second, y)));
    }
    return worst;
  }

  const FiniteMetricMeasureSpace& a_;
  const FiniteMetricMeasureSpace& b_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::size_t> free_a_, free_b_;
  double best_ = 0.0;
};

}  // namespace

double rooted_gh_exact(const FiniteMetricMeasureSpace& a, const FiniteMetricMeasureSpace& b) {
  if (a.size() > kExactGhCap || b.size() > kExactGhCap) {
    throw Error(ErrorCode::TooLarge, "exact GH limited to " + std::to_string(kExactGhCap) + " points");
  }
  return 0.5 * CorrespondenceSearch(a, b).run();
}

double PiecewiseLinear::at(double t) const {
  if (times.empty() || t < times.front() || t > times.back()) return 0.0;
  auto hi = std::upper_bound(times.begin(), times.end(), t);
  if (hi == times.end()) return values.back();
  const auto k = static_cast<std::size_t>(hi - times.begin());
  if (k == 0) return values.front();
  const double t0 = times[k - 1], t1 = times[k];
  if (t1 == t0) return values[k];
  return values[k - 1] + (t - t0) / (t1 - t0) * (values[k] - values[k - 1]);
}

double PiecewiseLinear::support_end() const {
  for (std::size_t k = values.size(); k-- > 0;) {
    if (values[k] > 0) {
      // Positive at breakpoint k; the function stays positive until the next
      // breakpoint's zero (linear pieces), so the sup is that breakpoint.
      return k + 1 < times.size() ? times[k + 1] : times[k];
    }
  }
  return 0.0;
}

PiecewiseLinear rescaled_contour(const PlaneTree& t, std::int64_t n_total, double sigma_p) {
  if (n_total < 1 || !(sigma_p > 0)) throw Error(ErrorCode::InvalidArgument, "need n_total >= 1, sigma_p > 0");
  const auto values = contour_function(t).values();
  const double scale = sigma_p / (2.0 * std::sqrt(static_cast<double>(n_total)));
  PiecewiseLinear f;
  const auto steps = static_cast<double>(values.size() - 1);
  for (std::size_t k = 0; k < values.size(); ++k) {
    f.times.push_back(steps > 0 ? static_cast<double>(k) / steps : 0.0);
    f.values.push_back(scale * static_cast<double>(values[k]));
  }
  return f;
}

double ghp_coding_bound(const PiecewiseLinear& f, const PiecewiseLinear& g) {
  std::vector<double> knots = f.times;
  knots.insert(knots.end(), g.times.begin(), g.times.end());
  std::sort(knots.begin(), knots.end());
  // f - g is linear between merged knots, so its sup is attained at one.
  double sup = 0.0;
  for (auto t : knots) sup = std::max(sup, std::abs(f.at(t) - g.at(t)));
  return 6.0 * sup + std::abs(f.support_end() - g.support_end());
}

CouplingBounds discrete_coupling_bounds(std::int64_t n, double sigma_p) {
  if (n < 1 || sigma_p < 0) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and sigma_p >= 0");
  const double edge = sigma_p / (2.0 * std::sqrt(static_cast<double>(n)));
  return CouplingBounds{0.5 * edge, 1.0 / static_cast<double>(n) + edge};
}

void write_csv(std::ostream& os, const FiniteMetricMeasureSpace& space) {
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t j = 0; j < space.size(); ++j) os << (j ? "," : "") << space.distance(i, j);
    os << '\n';
  }
}

}  // namespace pf::ghp
