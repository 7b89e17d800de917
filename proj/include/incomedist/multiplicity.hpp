// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "incomedist/bigint.hpp"
#include "incomedist/grid.hpp"

namespace incomedist {

// Competition regime. Perfect competition lets consumers move freely between
// industries, so consumers are interchangeable and microstates are multisets
// (Bose-Einstein counting). Monopolistic competition pins each consumer to an
// industry, so labeled assignments are distinct (Boltzmann counting).
enum class Regime { Perfect, Monopolistic };

struct Multiplicity {
  double log_omega = 0.0;
  std::optional<BigInt> exact;  // present when requested and computable
};

// Number of microstates for an integer occupancy:
//   perfect:       Omega = prod_k C(a_k + g_k - 1, a_k)
//   monopolistic:  Omega = N!/prod_k a_k! * prod_k g_k^{a_k}
// Exact value via arbitrary-precision integers plus its log; log_omega in the
// result is computed independently through log-gamma and agrees with
// log(exact) to 1e-9 relative.
Multiplicity omega_exact(const Occupancy& occ, const IncomeGrid& grid,
                         Regime regime, bool want_exact = true);

// Log-multiplicity through lgamma; accepts real-valued occupancies, which is
// what the entropy maximization differentiates.
double log_omega(const Occupancy& occ, const IncomeGrid& grid, Regime regime);

// The coarse Stirling form used by the analytic development
// (perfect regime only):
//   sum_k [(a_k+g_k-1) ln(a_k+g_k-1) - a_k ln a_k - g_k ln(g_k-1) + 1]
// with 0 ln 0 = 0. Undefined at g_k = 1 (ln 0); such grids are rejected with
// a pointer to log_omega, which has no such restriction.
double log_omega_stirling(const Occupancy& occ, const IncomeGrid& grid);

// Independent enumeration oracle: counts microstates explicitly rather than
// through factorial formulas. Guarded to N <= 12 and sum g_k <= 12.
//
// Perfect: per level, multisets of a_k indistinguishable consumers over g_k
// distinguishable slots are enumerated one by one; levels combine by the
// product rule (slots are partitioned by level, so the joint enumeration
// factorizes exactly).
// Monopolistic: consumer-to-level functions matching the occupancy are
// enumerated one by one; slot choices within a level are enumerated jointly
// as (slot count)^(occupancy) function tables when that table is small,
// falling back to per-consumer counting otherwise.
BigInt oracle_count(const Occupancy& occ, const IncomeGrid& grid,
                    Regime regime);

}  // namespace incomedist
