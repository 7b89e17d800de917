// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace incomedist {

struct AttachmentGraph {
  std::vector<long long> degrees;
  long long edge_count = 0;
};

// Barabasi-Albert preferential attachment: complete seed graph on m+1 nodes,
// then each arriving node attaches m edges to existing nodes with probability
// proportional to current degree, without replacement within one arrival.
// Requires n_nodes > m >= 1. Deterministic for a given seed.
AttachmentGraph generate_preferential_attachment(long long n_nodes,
                                                 long long m,
                                                 std::uint64_t seed);

// Income proxy: scale * degree; scale must be positive.
std::vector<double> degrees_to_income(const AttachmentGraph& graph,
                                      double scale);

// Power-law tail fit. gamma is the CCDF (rank) exponent; the density falls
// off as x^-(gamma+1), so density_exponent = gamma + 1.
struct TailFit {
  double gamma = 0.0;
  double density_exponent = 0.0;
  double xmin = 0.0;
  double ks = 0.0;
  long long n_tail = 0;
};

// Hill estimator with threshold selection:
//   density_exponent = 1 + n_tail / sum ln(x_i / xmin)
// xmin scans the unique sample values, keeping at least 50 tail points, and
// minimizes the KS distance between the tail and the fitted power law; ties
// go to the smaller xmin (more tail data). Estimates depend only on income
// ratios, so rescaling the sample rescales xmin and leaves gamma and ks
// untouched. Non-positive incomes are rejected; a gamma below 1 in the
// result signals data outside the model's range rather than an error.
TailFit fit_power_law(std::vector<double> sample);

// Same estimator at a caller-fixed threshold (still >= 50 tail points).
TailFit fit_power_law_at(std::vector<double> sample, double xmin);

}  // namespace incomedist
