#include "pf/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/tools/roots.hpp>

#include "pf/error.hpp"

namespace pf::stat {

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "KS needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;  // ties step both CDFs together
    while (j < b.size() && b[j] == x) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return sup;
}

double ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf) {
  if (a.empty()) throw Error(ErrorCode::EmptySample, "KS needs a non-empty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < a.size();) {
    std::size_t k = i;
    while (k < a.size() && a[k] == a[i]) ++k;
    const double f = cdf(a[i]);
    sup = std::max({sup, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(k) / n - f)});
    i = k;
  }
  return sup;
}

double chi_square(std::span<const std::int64_t> observed, std::span<const double> expected) {
  if (observed.empty() || observed.size() != expected.size()) {
    throw Error(ErrorCode::EmptySample, "chi-square needs matching non-empty inputs");
  }
  double x2 = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = static_cast<double>(observed[i]) - expected[i];
    x2 += d * d / expected[i];
  }
  return x2;
}

double chi_square_critical(double alpha, double dof) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
}

namespace {

// Tail of the Kolmogorov law, 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 x^2).
double kolmogorov_tail(double x) {
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 ? term : -term);
    if (term < 1e-18) break;
  }
  return 2.0 * sum;
}

double kolmogorov_critical(double alpha) {
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iterations = 200;
  auto [lo, hi] = boost::math::tools::bisect([alpha](double x) { return kolmogorov_tail(x) - alpha; },
                                             0.2, 10.0, tol, iterations);
  return 0.5 * (lo + hi);
}

}  // namespace

double ks_one_sample_critical(double alpha, std::size_t n) {
  return kolmogorov_critical(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m) {
  const double effective = static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(n + m);
  return kolmogorov_critical(alpha) / std::sqrt(effective);
}

double binomial_se(double p, std::int64_t trials) {
  return std::sqrt(std::max(0.0, p * (1 - p)) / static_cast<double>(trials));
}

double quantile(std::vector<double> a, double q) {
  if (a.empty()) throw Error(ErrorCode::EmptySample, "quantile of empty sample");
  std::sort(a.begin(), a.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(a.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, a.size() - 1);
  return a[lo] + (pos - static_cast<double>(lo)) * (a[hi] - a[lo]);
}

}  // namespace pf::stat
