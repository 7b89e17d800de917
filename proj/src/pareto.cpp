// SPDX-License-Identifier: Apache-2.0
#include "incomedist/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "incomedist/errors.hpp"
#include "incomedist/rng.hpp"
#include "incomedist/stats.hpp"

namespace incomedist {

namespace {

constexpr long long kMinTail = 50;

void add_edge(AttachmentGraph& g, std::vector<long long>& endpoints,
              long long u, long long v) {
  endpoints.push_back(u);
  endpoints.push_back(v);
  ++g.degrees[static_cast<std::size_t>(u)];
  ++g.degrees[static_cast<std::size_t>(v)];
  ++g.edge_count;
}

// Hill KS score for the tail sorted[i0..end) with threshold sorted[i0],
// using a precomputed suffix log-sum so the threshold scan stays O(1) per
// candidate. Returns false when the tail has zero spread.
bool hill_score(const std::vector<double>& sorted, std::size_t i0,
                double log_sum_from_i0, double* ks_out) {
  const std::size_t n_tail = sorted.size() - i0;
  const double xmin = sorted[i0];
  const double s =
      log_sum_from_i0 - static_cast<double>(n_tail) * std::log(xmin);
  if (!(s > 0.0)) return false;
  const double gamma = static_cast<double>(n_tail) / s;
  std::vector<double> tail(sorted.begin() +
                               static_cast<std::ptrdiff_t>(i0),
                           sorted.end());
  *ks_out = ks_distance(tail, [&](double x) {
    return x <= xmin ? 0.0 : 1.0 - std::pow(xmin / x, gamma);
  });
  return true;
}

// Hill estimate for sorted[i0..end) against threshold xmin. The Hill sum is
// taken over log(x / xmin): the quotient keeps the estimate exactly
// invariant under power-of-two rescaling of the data and avoids cancelling
// two large log sums. Returns false when the tail has zero spread.
bool hill_fit(const std::vector<double>& sorted, std::size_t i0, double xmin,
              TailFit* out) {
  const std::size_t n_tail = sorted.size() - i0;
  double s = 0.0;
  for (std::size_t i = i0; i < sorted.size(); ++i)
    s += std::log(sorted[i] / xmin);
  if (!(s > 0.0)) return false;
  const double gamma = static_cast<double>(n_tail) / s;
  std::vector<double> tail(sorted.begin() +
                               static_cast<std::ptrdiff_t>(i0),
                           sorted.end());
  const double ks = ks_distance(tail, [&](double x) {
    return x <= xmin ? 0.0 : 1.0 - std::pow(xmin / x, gamma);
  });
  out->gamma = gamma;
  out->density_exponent = gamma + 1.0;
  out->xmin = xmin;
  out->ks = ks;
  out->n_tail = static_cast<long long>(n_tail);
  return true;
}

std::vector<double> checked_sorted(std::vector<double> sample,
                                   const char* who) {
  if (sample.empty())
    throw InputError(std::string(who) + ": empty sample");
  for (double x : sample)
    if (!(x > 0.0) || !std::isfinite(x))
      throw InputError(std::string(who) +
                       ": incomes must be positive and finite");
  std::sort(sample.begin(), sample.end());
  return sample;
}

}  // namespace

AttachmentGraph generate_preferential_attachment(long long n_nodes,
                                                 long long m,
                                                 std::uint64_t seed) {
  if (m < 1 || n_nodes <= m)
    throw InputError("generate_preferential_attachment: need n_nodes > m >= "
                     "1 (got n_nodes = " + std::to_string(n_nodes) +
                     ", m = " + std::to_string(m) + ")");
  AttachmentGraph g;
  g.degrees.assign(static_cast<std::size_t>(n_nodes), 0);
  const long long edges =
      m * (m + 1) / 2 + m * (n_nodes - m - 1);
  std::vector<long long> endpoints;
  endpoints.reserve(static_cast<std::size_t>(2 * edges));
  for (long long i = 0; i <= m; ++i)
    for (long long j = i + 1; j <= m; ++j) add_edge(g, endpoints, i, j);
  Rng rng(seed, 0);
  std::vector<long long> picked;
  picked.reserve(static_cast<std::size_t>(m));
  for (long long v = m + 1; v < n_nodes; ++v) {
    // Sample m distinct targets proportional to degree from the
    // repeated-endpoint list as it stood when this node arrived.
    const std::uint64_t pool = static_cast<std::uint64_t>(endpoints.size());
    picked.clear();
    while (static_cast<long long>(picked.size()) < m) {
      long long u = endpoints[rng.uniform_below(pool)];
      if (std::find(picked.begin(), picked.end(), u) == picked.end())
        picked.push_back(u);
    }
    for (long long u : picked) add_edge(g, endpoints, v, u);
  }
  return g;
}

std::vector<double> degrees_to_income(const AttachmentGraph& graph,
                                      double scale) {
  if (!(scale > 0.0))
    throw InputError("degrees_to_income: scale must be positive");
  std::vector<double> out(graph.degrees.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = scale * static_cast<double>(graph.degrees[i]);
  return out;
}

TailFit fit_power_law(std::vector<double> sample) {
  const std::vector<double> sorted =
      checked_sorted(std::move(sample), "fit_power_law");
  const std::size_t n = sorted.size();
  if (static_cast<long long>(n) < kMinTail)
    throw DomainError("fit_power_law: need at least " +
                      std::to_string(kMinTail) + " observations");
  // Suffix sums of ln x make the Hill estimate O(1) per candidate.
  std::vector<double> log_suffix(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;)
    log_suffix[i] = log_suffix[i + 1] + std::log(sorted[i]);
  std::size_t best_i0 = 0;
  double best_ks = 0.0;
  bool have = false;
  for (std::size_t i0 = 0; i0 + kMinTail <= n; ++i0) {
    if (i0 > 0 && sorted[i0] == sorted[i0 - 1]) continue;  // same threshold
    double ks = 0.0;
    if (!hill_score(sorted, i0, log_suffix[i0], &ks)) continue;
    // Strict improvement only: ties keep the earlier (smaller) threshold.
    if (!have || ks < best_ks) {
      best_i0 = i0;
      best_ks = ks;
      have = true;
    }
  }
  TailFit best;
  // The returned fit is recomputed from log ratios at the chosen threshold,
  // matching what fit_power_law_at reports for the same xmin.
  if (!have || !hill_fit(sorted, best_i0, sorted[best_i0], &best))
    throw DomainError("fit_power_law: no usable threshold (sample has no "
                      "spread in any admissible tail)");
  return best;
}

TailFit fit_power_law_at(std::vector<double> sample, double xmin) {
  if (!(xmin > 0.0) || !std::isfinite(xmin))
    throw InputError("fit_power_law_at: xmin must be positive and finite");
  const std::vector<double> sorted =
      checked_sorted(std::move(sample), "fit_power_law_at");
  const std::size_t i0 = static_cast<std::size_t>(
      std::lower_bound(sorted.begin(), sorted.end(), xmin) - sorted.begin());
  if (static_cast<long long>(sorted.size() - i0) < kMinTail)
    throw DomainError("fit_power_law_at: fewer than " +
                      std::to_string(kMinTail) + " observations at or above "
                      "xmin = " + std::to_string(xmin));
  // The Hill sum is taken against the caller's threshold, not the smallest
  // retained observation.
  TailFit fit;
  if (!hill_fit(sorted, i0, xmin, &fit))
    throw DomainError("fit_power_law_at: tail has no spread above xmin");
  return fit;
}

}  // namespace incomedist
