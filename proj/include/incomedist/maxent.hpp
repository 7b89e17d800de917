// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "incomedist/grid.hpp"
#include "incomedist/multiplicity.hpp"

namespace incomedist {

struct SolveOptions {
  double constraint_tol = 1e-8;  // relative, both conservation constraints
  double inner_tol = 1e-12;      // relative width of the alpha bisection
  int max_outer = 200;
  int max_inner = 200;
};

// Entropy-maximizing occupancy under the two conservation constraints.
// mu = -alpha/beta is the chemical-potential analogue and T = 1/beta the
// temperature analogue of the model.
struct EquilibriumSolution {
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 0.0;
  double temperature = 0.0;
  Regime regime = Regime::Perfect;
  Occupancy occupancy;
  // Fraction of consumers pinned at the ground level beyond what the
  // occupancy formula can hold (perfect regime, sub-critical only).
  double condensate_fraction = 0.0;
  // True when every g_k = 1 in the perfect regime and the occupancy is the
  // forced single-level solution; alpha/beta are then reported by the
  // convention beta = 1, mu = eps_l since the multipliers are not identified.
  bool degenerate = false;
  double count_residual = 0.0;   // relative, at return
  double income_residual = 0.0;  // relative, at return
  std::string note;              // non-fatal warnings (e.g. off-grid snap)
};

// Stationary occupancy at given multipliers:
//   a_k = (g_k - I) / (e^{alpha + beta eps_k} - I),  I = 1 perfect, 0 mono.
// Perfect regime requires e^{alpha + beta eps_k} > 1 at every level
// (sub-critical inputs raise DomainError naming the offending level); levels
// with g_k = 1 contribute a_k = 0 exactly because the numerator vanishes.
Occupancy occupancy_at(double alpha, double beta, const IncomeGrid& grid,
                       Regime regime);

// Solves sum a_k = N and sum a_k eps_k = Pi for (alpha, beta), beta > 0.
//
// Nested bisection: at fixed beta the total count is strictly decreasing in
// alpha, so alpha is bisected first; beta is then bisected on the income
// residual over a bracket grown geometrically from [1e-12, 1e12]/mean(eps).
//
// Perfect regime: when the ground level has g_1 = 1 the formula holds nobody
// there, which caps the population the excited levels can carry; below the
// critical income the solver pins mu at eps_1 - 1e-9*bin width, fills the
// excited levels from the occupancy formula and books the remainder at the
// ground level as condensate. All-g_k-1 grids short-circuit to the degenerate
// single-level solution (see detect_proposition1).
//
// Mean incomes outside [eps_1, eps_n], or above the degeneracy-weighted grid
// mean reachable at positive beta, raise DomainError.
EquilibriumSolution solve(const EconomyParams& params, const IncomeGrid& grid,
                          Regime regime, const SolveOptions& opts = {});

struct DegenerateSolution {
  Occupancy occupancy;
  std::size_t level = 0;  // index l with a_l = N
  bool snapped = false;   // Pi/N farther than half a bin from every level
};

// Perfect regime with every g_k = 1: the constraints force everyone onto the
// level nearest Pi/N (ties toward the lower level). Returns nullopt in every
// other configuration.
std::optional<DegenerateSolution> detect_proposition1(
    const IncomeGrid& grid, Regime regime, const EconomyParams& params);

// Maximum relative deviation between perfect and monopolistic occupancies
// evaluated at the solution's multipliers. Requires a non-degenerate,
// non-condensed perfect solution with g_k >= 2 and g_k / a_k >= 100 at every
// level (the classical dilute limit); outside that the comparison is
// meaningless and a DomainError names the offending level.
double boltzmann_limit_check(const EquilibriumSolution& solution,
                             const IncomeGrid& grid);

}  // namespace incomedist
