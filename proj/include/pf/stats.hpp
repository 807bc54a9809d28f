#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace pf::stat {

/// sup |F_a - F_b| of the empirical CDFs. Inputs need not be sorted.
/// Throws Error{EmptySample}.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// sup |F_a - cdf|.
double ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf);

/// Pearson statistic sum (o - e)^2 / e.
double chi_square(std::span<const std::int64_t> observed, std::span<const double> expected);

/// Upper `alpha` quantile of the chi-square law with `dof` degrees of freedom.
double chi_square_critical(double alpha, double dof);

/// Asymptotic level-alpha critical values of the KS statistics.
double ks_one_sample_critical(double alpha, std::size_t n);
double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m);

/// Standard error of a frequency estimate p from `trials` Bernoulli draws.
double binomial_se(double p, std::int64_t trials);

double quantile(std::vector<double> a, double q);

}  // namespace pf::stat
