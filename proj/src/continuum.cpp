#include "pf/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pf/error.hpp"

namespace pf::continuum {

namespace {

void check_grid(std::int64_t m) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "grid needs m >= 2 cells");
}

double gaussian(double variance, double x) {
  return std::exp(-x * x / (2 * variance)) / std::sqrt(2 * std::numbers::pi * variance);
}

// Density of the first hitting time of -a, evaluated at time t, for a > 0;
// equals the derivative p'_t(-a) of the heat kernel.
double hitting_density(double t, double a) { return a / t * gaussian(t, a); }

}  // namespace

double GridPath::at(double t) const {
  const auto m = cells();
  const double x = std::clamp(t, 0.0, 1.0) * static_cast<double>(m);
  const auto k = std::min<std::int64_t>(static_cast<std::int64_t>(x), m - 1);
  const double frac = x - static_cast<double>(k);
  return values[k] + frac * (values[k + 1] - values[k]);
}

double GridPath::minimum() const { return *std::min_element(values.begin(), values.end()); }

GridPath sample_brownian_bridge(double l, std::int64_t m, SeededRng& rng) {
  check_grid(m);
  if (l < 0) throw Error(ErrorCode::InvalidArgument, "bridge endpoint -l needs l >= 0");
  const double step = std::sqrt(1.0 / static_cast<double>(m));
  std::vector<double> walk(static_cast<std::size_t>(m) + 1, 0.0);
  for (std::int64_t k = 1; k <= m; ++k) walk[k] = walk[k - 1] + rng.normal(0.0, step);

  const double end = walk[m] + l;
  GridPath p;
  p.values.resize(walk.size());
  for (std::int64_t k = 0; k <= m; ++k) {
    p.values[k] = walk[k] - static_cast<double>(k) / static_cast<double>(m) * end;
  }
  p.values[0] = 0.0;
  p.values[m] = -l;
  return p;
}

GridPath cyclic_shift(const GridPath& p, std::int64_t u) {
  const auto m = p.cells();
  if (u < 0 || u > m) throw Error(ErrorCode::IndexOutOfRange, "grid shift outside [0, m]");
  GridPath q;
  q.values.resize(p.values.size());
  const double base = p.values[u];
  const double end = p.values[m];
  for (std::int64_t k = 0; k <= m; ++k) {
    q.values[k] = k <= m - u ? p.values[u + k] - base : p.values[k - (m - u)] + end - base;
  }
  q.values[0] = 0.0;
  q.values[m] = end;
  return q;
}

FirstPassageDraw sample_fp_bridge_with_shift(double lambda, std::int64_t m, SeededRng& rng) {
  if (!(lambda > 0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  const auto bridge = sample_brownian_bridge(lambda, m, rng);
  const double nu = rng.uniform_real(0.0, lambda);
  const double level = bridge.minimum() + nu;
  std::int64_t u = 0;
  while (bridge.values[u] > level) ++u;
  return FirstPassageDraw{cyclic_shift(bridge, u), u, nu};
}

GridPath sample_fp_bridge(double lambda, std::int64_t m, SeededRng& rng) {
  return sample_fp_bridge_with_shift(lambda, m, rng).path;
}

GridPath sample_brownian_excursion(std::int64_t m, SeededRng& rng) {
  const auto bridge = sample_brownian_bridge(0.0, m, rng);
  const auto argmin = std::min_element(bridge.values.begin(), bridge.values.end()) - bridge.values.begin();
  return cyclic_shift(bridge, argmin);
}

double fp_marginal_density(double lambda, double s, double x) {
  if (!(lambda > 0)) throw Error(ErrorCode::DomainError, "lambda must be positive");
  if (!(s > 0 && s < 1)) throw Error(ErrorCode::DomainError, "time must lie in (0, 1)");
  if (x <= -lambda) return 0.0;
  // Killed-at--lambda transition density (reflection principle) times the
  // Doob h-transform ratio for first hitting -lambda at time 1.
  const double killed = gaussian(s, x) - gaussian(s, x + 2 * lambda);
  return killed * hitting_density(1 - s, lambda + x) / hitting_density(1.0, lambda);
}

double fp_marginal_cdf(double lambda, double s, double x) {
  if (x <= -lambda) {
    fp_marginal_density(lambda, s, x);  // argument checks
    return 0.0;
  }
  auto f = [&](double y) { return fp_marginal_density(lambda, s, y); };
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -lambda, x, 15, 1e-12);
  return std::clamp(v, 0.0, 1.0);
}

GridPath reflect_at_min(const GridPath& p) {
  GridPath r;
  r.values.resize(p.values.size());
  double running = p.values[0];
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    running = std::min(running, p.values[k]);
    r.values[k] = p.values[k] - running;
  }
  return r;
}

ExcursionList excursions(const GridPath& p, bool reflected) {
  const GridPath r = reflected ? p : reflect_at_min(p);
  const auto& v = r.values;
  const auto m = r.cells();
  const double dt = r.dt();

  ExcursionList out;
  bool open = v[0] > 0;
  double start = 0.0;
  for (std::int64_t k = 0; k < m; ++k) {
    const double a = v[k], b = v[k + 1];
    if (!open && b > 0) {
      // a <= 0 < b: crossing inside the cell (at its left end when a == 0)
      start = (static_cast<double>(k) + (-a) / (b - a)) * dt;
      open = true;
    } else if (open && b <= 0) {
      const double end = (static_cast<double>(k) + a / (a - b)) * dt;
      out.push_back({start, end});
      open = false;
    }
  }
  if (open) out.push_back({start, 1.0});

  std::stable_sort(out.begin(), out.end(),
                   [](const Excursion& x, const Excursion& y) { return x.length() > y.length(); });
  return out;
}

ExcursionTreeStats excursion_tree_stats(std::span<const double> values, double dt) {
  double height = 0.0;
  for (auto x : values) height = std::max(height, x);
  const double length = values.empty() ? 0.0 : static_cast<double>(values.size() - 1) * dt;
  return {height, length};
}

ExcursionTreeStats excursion_tree_stats(const GridPath& p, const Excursion& e) {
  // Interior grid values bound the interpolant's maximum; the endpoints are zeros.
  const auto m = p.cells();
  const auto lo = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::ceil(e.left * m)), 0, m);
  const auto hi = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(e.right * m)), 0, m);
  double height = 0.0;
  for (auto k = lo; k <= hi; ++k) height = std::max(height, p.values[k]);
  return {height, e.length()};
}

void write_csv(std::ostream& os, const GridPath& p) {
  os << "time,value\n";
  const double dt = p.dt();
  for (std::size_t k = 0; k < p.values.size(); ++k) {
    os << static_cast<double>(k) * dt << ',' << p.values[k] << '\n';
  }
}

nlohmann::json to_json(const ExcursionList& list) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : list) out.push_back({{"left", e.left}, {"right", e.right}, {"length", e.length()}});
  return out;
}

}  // namespace pf::continuum
