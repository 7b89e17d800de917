// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace incomedist {

// Regularized lower incomplete gamma P(a, x); Q(a, x) = 1 - P(a, x).
// Series expansion for x < a + 1, continued fraction otherwise.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution with dof degrees of
// freedom, i.e. the p-value of an observed statistic x.
double chi_square_sf(double x, int dof);

// Pearson statistic sum (o-e)^2/e; expected counts must be positive.
double chi_square_statistic(const std::vector<double>& observed,
                            const std::vector<double>& expected);

// One-sample Kolmogorov-Smirnov distance between sorted data and a continuous
// CDF, sup over both sides of each jump.
double ks_distance(const std::vector<double>& sorted,
                   const std::function<double(double)>& cdf);

// Two-sample KS distance between two sorted samples.
double ks_two_sample(const std::vector<double>& sorted_a,
                     const std::vector<double>& sorted_b);

// Asymptotic two-sample KS critical value at significance 0.01:
// 1.628 * sqrt((n+m)/(n*m)).
double ks_two_sample_critical_01(std::size_t n, std::size_t m);

}  // namespace incomedist
