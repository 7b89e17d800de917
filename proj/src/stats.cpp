// SPDX-License-Identifier: Apache-2.0
#include "incomedist/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "incomedist/errors.hpp"

namespace incomedist {

namespace {

// Series representation of P(a,x), valid and fast for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a,x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(a) || !std::isfinite(x))
    throw InputError("regularized_gamma_p: requires a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(a) || !std::isfinite(x))
    throw InputError("regularized_gamma_q: requires a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_sf(double x, int dof) {
  if (dof < 1) throw InputError("chi_square_sf: dof must be >= 1");
  if (x < 0.0) return 1.0;
  return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

double chi_square_statistic(const std::vector<double>& observed,
                            const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw InputError("chi_square_statistic: size mismatch or empty input");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0))
      throw InputError("chi_square_statistic: expected counts must be > 0");
    double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

double ks_distance(const std::vector<double>& sorted,
                   const std::function<double(double)>& cdf) {
  if (sorted.empty()) throw InputError("ks_distance: empty sample");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = cdf(sorted[i]);
    d = std::max(d, std::fabs((i + 1) / n - f));
    d = std::max(d, std::fabs(i / n - f));
  }
  return d;
}

double ks_two_sample(const std::vector<double>& a,
                     const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw InputError("ks_two_sample: empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return d;
}

double ks_two_sample_critical_01(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0)
    throw InputError("ks_two_sample_critical_01: empty sample");
  const double c01 = 1.628;  // asymptotic coefficient at significance 0.01
  double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return c01 * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace incomedist
