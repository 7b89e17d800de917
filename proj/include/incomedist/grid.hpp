// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace incomedist {

// A closed economy: N consumers sharing total income Pi, discretized in
// quanta of size delta for the combinatorial machinery.
struct EconomyParams {
  long long n_consumers = 0;
  double total_income = 0.0;
  double quantum = 1.0;

  // Throws InputError unless n >= 1, Pi > 0, delta > 0.
  void validate() const;
};

// Discrete income levels eps_1 < ... < eps_n, eps_1 >= 0, each carrying
// degeneracy g_k >= 1 (the number of industries paying that level).
//
// When the levels are bin centers of uniform bins the bin width is carried
// alongside so allocations can be binned; a grid loaded from bare levels
// infers the width from the (required uniform) spacing when it has at least
// two levels. eps_1 = 0 is allowed; the equilibrium solver then needs
// mu < 0 in the perfect regime.
class IncomeGrid {
 public:
  IncomeGrid(std::vector<double> levels, std::vector<long long> degeneracies,
             double bin_width = 0.0);

  // Uniform bins spanning [eps_min, eps_max]; levels are the bin centers and
  // bin width is (eps_max - eps_min)/n_levels. Requires eps_max > eps_min >= 0.
  static IncomeGrid uniform(double eps_min, double eps_max, int n_levels,
                            std::vector<long long> degeneracies);

  const std::vector<double>& levels() const { return levels_; }
  const std::vector<long long>& degeneracies() const { return degeneracies_; }
  std::size_t size() const { return levels_.size(); }

  bool has_bins() const { return bin_width_ > 0.0; }
  double bin_width() const { return bin_width_; }
  double left_edge() const;
  double right_edge() const;

 private:
  std::vector<double> levels_;
  std::vector<long long> degeneracies_;
  double bin_width_;  // 0 when unknown (binning unavailable)
};

// Equivalent to IncomeGrid::uniform; kept as a free function because most
// call sites construct grids this way.
IncomeGrid build_grid(double eps_min, double eps_max, int n_levels,
                      const std::vector<long long>& degeneracies);

// One equilibrium division of total income: incomes R_1..R_N, each >= 0.
struct Allocation {
  std::vector<double> incomes;
};

// Throws InputError unless all incomes are >= 0 and finite and they sum to
// params.total_income within 1e-12 relative.
void validate_allocation(const Allocation& alloc, const EconomyParams& params);

// Occupancy numbers a_1..a_n over grid levels. Counts are integers when they
// come from exact counting or binning, real when they come from the
// maximum-entropy solver; both live in the same representation.
struct Occupancy {
  std::vector<double> counts;

  double total() const;
  double income(const IncomeGrid& grid) const;
  bool is_integral() const;
  // Throws InputError when any entry is negative or not an integer.
  std::vector<long long> as_integers() const;
};

// Bins each income into the half-open bin [left_k, right_k); the last bin is
// closed on the right so eps_max itself is in range. A boundary income
// belongs to the bin on its right. Out-of-range incomes raise DomainError
// naming the consumer index and value.
Occupancy bin_allocation(const Allocation& alloc, const IncomeGrid& grid);

struct FeasibilityReport {
  double count_residual = 0.0;   // |sum a - N| / max(1, N)
  double income_residual = 0.0;  // |sum a*eps - Pi| / |Pi|
  bool count_ok = false;
  bool income_ok = false;
  bool feasible() const { return count_ok && income_ok; }
};

// Checks the two conservation constraints sum a_k = N and sum a_k eps_k = Pi
// at relative tolerance tol (default matches the type-level contract).
FeasibilityReport validate_occupancy(const Occupancy& occ,
                                     const EconomyParams& params,
                                     const IncomeGrid& grid,
                                     double tol = 1e-10);

}  // namespace incomedist
