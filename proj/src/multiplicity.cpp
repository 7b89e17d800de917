// SPDX-License-Identifier: Apache-2.0
#include "incomedist/multiplicity.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "incomedist/errors.hpp"

namespace incomedist {

namespace {

void check_shapes(const Occupancy& occ, const IncomeGrid& grid) {
  if (occ.counts.size() != grid.size())
    throw InputError("multiplicity: occupancy length does not match grid");
}

// Counts multisets of size c over g distinguishable slots by explicit
// enumeration (non-decreasing slot sequences), not by binomials.
std::uint64_t enumerate_multisets(long long c, long long g) {
  std::uint64_t count = 0;
  // state: remaining items, lowest slot still available
  auto rec = [&](auto&& self, long long remaining, long long slot) -> void {
    if (remaining == 0) {
      ++count;
      return;
    }
    if (slot >= g) return;
    // next item goes to one of slots slot..g-1
    for (long long s = slot; s < g; ++s) self(self, remaining - 1, s);
  };
  rec(rec, c, 0);
  return count;
}

// Counts functions {1..c} -> {1..g} by explicit enumeration when the table
// is small; otherwise per-consumer product rule (each factor is still an
// explicitly counted set of g slot choices).
BigInt count_slot_functions(long long c, long long g) {
  double table = std::pow(static_cast<double>(g), static_cast<double>(c));
  if (table <= 1e7) {
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, long long remaining) -> void {
      if (remaining == 0) {
        ++count;
        return;
      }
      for (long long s = 0; s < g; ++s) self(self, remaining - 1);
    };
    rec(rec, c);
    return BigInt(static_cast<unsigned long>(count));
  }
  BigInt r(1ul);
  for (long long j = 0; j < c; ++j) {
    std::uint64_t choices = 0;
    for (long long s = 0; s < g; ++s) ++choices;
    r.mul_ui(static_cast<unsigned long>(choices));
  }
  return r;
}

// Counts consumer-to-level functions hitting the occupancy exactly, by
// explicit recursion over labeled consumers with quota pruning.
std::uint64_t enumerate_level_functions(const std::vector<long long>& quota) {
  long long total = 0;
  for (long long q : quota) total += q;
  std::vector<long long> remaining = quota;
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, long long consumer) -> void {
    if (consumer == total) {
      ++count;
      return;
    }
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      if (remaining[k] == 0) continue;
      --remaining[k];
      self(self, consumer + 1);
      ++remaining[k];
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace

Multiplicity omega_exact(const Occupancy& occ, const IncomeGrid& grid,
                         Regime regime, bool want_exact) {
  check_shapes(occ, grid);
  const std::vector<long long> a = occ.as_integers();
  const auto& g = grid.degeneracies();
  Multiplicity m;
  m.log_omega = log_omega(occ, grid, regime);
  if (!want_exact) return m;

  if (regime == Regime::Perfect) {
    BigInt omega(1ul);
    for (std::size_t k = 0; k < a.size(); ++k) {
      omega *= BigInt::binomial(
          static_cast<unsigned long>(a[k] + g[k] - 1),
          static_cast<unsigned long>(a[k]));
    }
    m.exact = std::move(omega);
  } else {
    long long n = 0;
    for (long long ak : a) n += ak;
    BigInt omega = BigInt::factorial(static_cast<unsigned long>(n));
    for (std::size_t k = 0; k < a.size(); ++k) {
      omega.divexact(BigInt::factorial(static_cast<unsigned long>(a[k])));
      omega *= BigInt::pow(static_cast<unsigned long>(g[k]),
                           static_cast<unsigned long>(a[k]));
    }
    m.exact = std::move(omega);
  }
  return m;
}

double log_omega(const Occupancy& occ, const IncomeGrid& grid, Regime regime) {
  check_shapes(occ, grid);
  const auto& a = occ.counts;
  const auto& g = grid.degeneracies();
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!(a[k] >= 0.0) || !std::isfinite(a[k]))
      throw InputError("log_omega: count at level " + std::to_string(k) +
                       " must be >= 0 and finite");
  double result = 0.0;
  if (regime == Regime::Perfect) {
    // ln C(a+g-1, a) = lgamma(a+g) - lgamma(a+1) - lgamma(g)
    for (std::size_t k = 0; k < a.size(); ++k) {
      double gk = static_cast<double>(g[k]);
      result += std::lgamma(a[k] + gk) - std::lgamma(a[k] + 1.0) -
                std::lgamma(gk);
    }
  } else {
    // ln [N!/prod a! * prod g^a]
    double n = 0.0;
    for (double ak : a) n += ak;
    result = std::lgamma(n + 1.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
      result -= std::lgamma(a[k] + 1.0);
      result += a[k] * std::log(static_cast<double>(g[k]));
    }
  }
  return result;
}

double log_omega_stirling(const Occupancy& occ, const IncomeGrid& grid) {
  check_shapes(occ, grid);
  const auto& a = occ.counts;
  const auto& g = grid.degeneracies();
  double result = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (g[k] == 1)
      throw DomainError(
          "log_omega_stirling: undefined at degeneracy 1 (level " +
          std::to_string(k) + "); use log_omega instead");
    if (!(a[k] >= 0.0) || !std::isfinite(a[k]))
      throw InputError("log_omega_stirling: count at level " +
                       std::to_string(k) + " must be >= 0 and finite");
    const double gk = static_cast<double>(g[k]);
    const double top = a[k] + gk - 1.0;
    double term = top * std::log(top);     // top >= g-1 >= 1 here
    if (a[k] > 0.0) term -= a[k] * std::log(a[k]);  // 0 ln 0 = 0
    term -= gk * std::log(gk - 1.0);
    term += 1.0;
    result += term;
  }
  return result;
}

BigInt oracle_count(const Occupancy& occ, const IncomeGrid& grid,
                    Regime regime) {
  check_shapes(occ, grid);
  const std::vector<long long> a = occ.as_integers();
  const auto& g = grid.degeneracies();
  long long n = 0, gsum = 0;
  for (long long ak : a) n += ak;
  for (long long gk : g) gsum += gk;
  if (n > 12 || gsum > 12)
    throw DomainError("oracle_count: guarded to N <= 12 and sum g_k <= 12 "
                      "(got N = " + std::to_string(n) + ", sum g = " +
                      std::to_string(gsum) + ")");

  if (regime == Regime::Perfect) {
    // Slots are partitioned by level, so per-level multiset counts combine
    // by the product rule into the joint multiset count.
    BigInt omega(1ul);
    for (std::size_t k = 0; k < a.size(); ++k) {
      std::uint64_t per_level = enumerate_multisets(a[k], g[k]);
      BigInt factor(0ul);
      factor += static_cast<unsigned long>(per_level);
      omega *= factor;
    }
    return omega;
  }

  // Labeled assignments factor into (consumer -> level) x per-level
  // (consumer -> slot) tables; both factors are enumerated.
  std::uint64_t level_functions = enumerate_level_functions(a);
  BigInt omega(0ul);
  omega += static_cast<unsigned long>(level_functions);
  for (std::size_t k = 0; k < a.size(); ++k)
    omega *= count_slot_functions(a[k], g[k]);
  return omega;
}

}  // namespace incomedist
