// SPDX-License-Identifier: Apache-2.0
#include "incomedist/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "incomedist/errors.hpp"

namespace incomedist {

namespace {

// Offset (in units of the level spacing) by which the chemical potential is
// pinned below the ground level in condensed solutions.
constexpr double kPinOffset = 1e-9;

SolveOptions normalized(const SolveOptions& o) {
  SolveOptions r = o;
  if (!(r.constraint_tol > 0.0)) r.constraint_tol = 1e-8;
  if (!(r.inner_tol > 0.0)) r.inner_tol = 1e-12;
  if (r.max_outer <= 0) r.max_outer = 200;
  if (r.max_inner <= 0) r.max_inner = 200;
  return r;
}

double min_spacing(const IncomeGrid& grid) {
  if (grid.has_bins()) return grid.bin_width();
  const auto& eps = grid.levels();
  if (eps.size() < 2) return eps[0] > 0.0 ? eps[0] : 1.0;
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < eps.size(); ++k)
    s = std::min(s, eps[k + 1] - eps[k]);
  return s;
}

double sum(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

double dot_income(const std::vector<double>& a, const std::vector<double>& e) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * e[k];
  return s;
}

// Perfect-regime occupancy at x1 = alpha + beta*eps_1 (> 0); the exponent at
// level k is x1 + beta*(eps_k - eps_1), which avoids the cancellation of
// computing alpha + beta*eps_k directly at large beta. Levels with g = 1
// hold nobody (zero numerator).
std::vector<double> perfect_occupancy(const IncomeGrid& grid, double x1,
                                      double beta) {
  const auto& eps = grid.levels();
  const auto& g = grid.degeneracies();
  std::vector<double> a(grid.size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (g[k] == 1) continue;
    double den = std::expm1(x1 + beta * (eps[k] - eps[0]));
    a[k] = std::isinf(den) ? 0.0
                           : static_cast<double>(g[k] - 1) / den;
  }
  return a;
}

double perfect_count(const IncomeGrid& grid, double x1, double beta) {
  return sum(perfect_occupancy(grid, x1, beta));
}

// Total count is strictly decreasing in x1; bisect on ln x1 so the relative
// precision of x1 matches inner_tol. Returns nullopt when even x1 -> 0+
// cannot hold the target (bounded excited capacity; g_1 = 1 only).
std::optional<double> solve_x1(const IncomeGrid& grid, double beta,
                               double n_target, const SolveOptions& opts) {
  double thi = std::log(1e-6);
  int guard = 0;
  while (perfect_count(grid, std::exp(thi), beta) > n_target) {
    thi += 2.0;
    if (++guard > 500) break;
  }
  double tlo = std::min(thi - 2.0, std::log(1e-6));
  guard = 0;
  while (perfect_count(grid, std::exp(tlo), beta) < n_target) {
    tlo -= 2.0;
    if (tlo < -620.0) return std::nullopt;
    if (++guard > 500) return std::nullopt;
  }
  for (int it = 0; it < opts.max_inner && thi - tlo > opts.inner_tol; ++it) {
    double tm = 0.5 * (tlo + thi);
    if (perfect_count(grid, std::exp(tm), beta) >= n_target)
      tlo = tm;
    else
      thi = tm;
  }
  return std::exp(0.5 * (tlo + thi));
}

// Monopolistic occupancy through y1 = ln a_1: a_k = exp(y1 + w_k) with
// w_k = ln(g_k/g_1) - beta*(eps_k - eps_1). Same cancellation-free shape.
std::vector<double> mono_weights(const IncomeGrid& grid, double beta) {
  const auto& eps = grid.levels();
  const auto& g = grid.degeneracies();
  std::vector<double> w(grid.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] = std::log(static_cast<double>(g[k]) / g[0]) -
           beta * (eps[k] - eps[0]);
  return w;
}

std::vector<double> mono_occupancy(const std::vector<double>& w, double y1) {
  std::vector<double> a(w.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::exp(y1 + w[k]);
  return a;
}

// Count is strictly increasing in y1; plain bisection around the analytic
// bracket (the count is exp(y1) * sum exp(w_k)).
double solve_y1(const std::vector<double>& w, double n_target,
                const SolveOptions& opts) {
  double wsum = 0.0;
  for (double wk : w) wsum += std::exp(wk);
  const double center = std::log(n_target) - std::log(wsum);
  double lo = center - 1.0, hi = center + 1.0;
  auto count = [&](double y1) { return sum(mono_occupancy(w, y1)); };
  int guard = 0;
  while (count(lo) > n_target && ++guard < 100) lo -= 2.0;
  guard = 0;
  while (count(hi) < n_target && ++guard < 100) hi += 2.0;
  for (int it = 0; it < opts.max_inner && hi - lo >
           opts.inner_tol * std::max(1.0, std::fabs(lo));
       ++it) {
    double mid = 0.5 * (lo + hi);
    if (count(mid) <= n_target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Excited-level occupancy sum and income excess over the ground level at a
// pinned chemical potential (condensed bookkeeping; ground level excluded).
void condensed_excited(const IncomeGrid& grid, double beta, double mu_pin,
                       double* count_out, double* excess_out) {
  const auto& eps = grid.levels();
  const auto& g = grid.degeneracies();
  double s = 0.0, e = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (g[k] == 1) continue;
    double den = std::expm1(beta * (eps[k] - mu_pin));
    if (std::isinf(den)) continue;
    double a = static_cast<double>(g[k] - 1) / den;
    s += a;
    e += a * (eps[k] - eps[0]);
  }
  *count_out = s;
  *excess_out = e;
}

EquilibriumSolution assemble(const EconomyParams& params,
                             const IncomeGrid& grid, Regime regime,
                             double alpha, double beta,
                             std::vector<double> occupancy) {
  EquilibriumSolution sol;
  sol.alpha = alpha;
  sol.beta = beta;
  sol.mu = -alpha / beta;
  sol.temperature = 1.0 / beta;
  sol.regime = regime;
  sol.occupancy.counts = std::move(occupancy);
  const double n = static_cast<double>(params.n_consumers);
  sol.count_residual = std::fabs(sum(sol.occupancy.counts) - n) / n;
  sol.income_residual =
      std::fabs(dot_income(sol.occupancy.counts, grid.levels()) -
                params.total_income) /
      params.total_income;
  return sol;
}

EquilibriumSolution solve_degenerate_all_g1(const EconomyParams& params,
                                            const IncomeGrid& grid,
                                            const SolveOptions& opts) {
  const auto& eps = grid.levels();
  const double m = params.total_income / params.n_consumers;
  std::size_t best = 0;
  double bestd = std::fabs(eps[0] - m);
  for (std::size_t k = 1; k < eps.size(); ++k) {
    double d = std::fabs(eps[k] - m);
    if (d < bestd) {
      best = k;
      bestd = d;
    }
  }
  // The forced occupancy puts everyone on one level, so the income
  // constraint is only satisfiable when Pi/N actually is that level.
  if (bestd > opts.constraint_tol * std::max(m, 1e-300))
    throw DomainError(
        "solve: perfect regime with all degeneracies 1 admits only "
        "single-level occupancies, and mean income " + std::to_string(m) +
        " is not a grid level");
  std::vector<double> a(grid.size(), 0.0);
  a[best] = static_cast<double>(params.n_consumers);
  // Multipliers are not identified here; report the beta = 1 convention.
  const double beta = 1.0;
  const double alpha = -eps[best] * beta;
  EquilibriumSolution sol =
      assemble(params, grid, Regime::Perfect, alpha, beta, std::move(a));
  sol.degenerate = true;
  return sol;
}

EquilibriumSolution solve_perfect(const EconomyParams& params,
                                  const IncomeGrid& grid,
                                  const SolveOptions& opts) {
  const auto& eps = grid.levels();
  const auto& g = grid.degeneracies();
  const double n_d = static_cast<double>(params.n_consumers);
  const double pi = params.total_income;

  bool all_g1 = true;
  for (long long gk : g)
    if (gk != 1) {
      all_g1 = false;
      break;
    }
  if (all_g1) return solve_degenerate_all_g1(params, grid, opts);

  if (grid.size() == 1) {
    // Count alone pins x1; income holds because the pre-check already
    // forced Pi/N onto the single level.
    const double beta = 1.0;
    const double x1 = std::log1p(static_cast<double>(g[0] - 1) / n_d);
    return assemble(params, grid, Regime::Perfect, x1 - beta * eps[0], beta,
                    perfect_occupancy(grid, x1, beta));
  }

  double mean_eps = 0.0;
  for (double e : eps) mean_eps += e;
  mean_eps /= static_cast<double>(grid.size());

  double t_lo = std::log(1e-12 / mean_eps);
  double t_hi = std::log(1e12 / mean_eps);

  // With g_1 = 1 the formula holds nobody at the ground level, so the
  // excited levels alone must carry N; that caps beta at the point where
  // their capacity (the x1 -> 0 limit of the count) has decayed to N.
  const bool ground_open = g[0] > 1;
  if (!ground_open) {
    auto capacity = [&](double t) {
      double beta = std::exp(t);
      double s = 0.0;
      for (std::size_t k = 1; k < grid.size(); ++k) {
        if (g[k] == 1) continue;
        double den = std::expm1(beta * (eps[k] - eps[0]));
        if (std::isinf(den)) continue;
        s += static_cast<double>(g[k] - 1) / den;
      }
      return s;
    };
    double ca = t_lo, cb = t_hi;
    int guard = 0;
    while (capacity(ca) < n_d && ++guard < 200) ca -= 2.0;
    guard = 0;
    while (capacity(cb) > n_d && ++guard < 200) cb += 2.0;
    for (int it = 0; it < 200 && cb - ca > 1e-12; ++it) {
      double cm = 0.5 * (ca + cb);
      if (capacity(cm) >= n_d)
        ca = cm;
      else
        cb = cm;
    }
    // Stay strictly inside the capacity horizon.
    t_hi = std::min(t_hi, 0.5 * (ca + cb) - 1e-9);
  }

  struct Eval {
    bool ok = false;
    double h = -1.0;  // relative income residual, signed
    double x1 = 0.0;
    std::vector<double> occupancy;
  };
  auto eval = [&](double t) {
    Eval r;
    double beta = std::exp(t);
    auto x1 = solve_x1(grid, beta, n_d, opts);
    if (!x1) return r;  // beyond capacity: behaves like the cold side
    r.ok = true;
    r.x1 = *x1;
    r.occupancy = perfect_occupancy(grid, *x1, beta);
    r.h = (dot_income(r.occupancy, eps) - pi) / pi;
    return r;
  };
  auto accept = [&](double t, const Eval& ev) {
    double beta = std::exp(t);
    return assemble(params, grid, Regime::Perfect, ev.x1 - beta * eps[0],
                    beta, ev.occupancy);
  };

  int evals = 0;
  Eval lo_ev = eval(t_lo);
  ++evals;
  // Warmer brackets raise the mean income; expand until it exceeds the
  // target (or give up: the target sits above the positive-beta ceiling).
  while ((!lo_ev.ok || lo_ev.h <= 0.0) && evals < opts.max_outer) {
    if (lo_ev.ok && std::fabs(lo_ev.h) <= opts.constraint_tol)
      return accept(t_lo, lo_ev);
    t_lo -= 2.0;
    lo_ev = eval(t_lo);
    ++evals;
  }
  if (!lo_ev.ok || lo_ev.h <= 0.0)
    throw DomainError(
        "solve: mean income is above the degeneracy-weighted grid mean; no "
        "positive-temperature equilibrium (income residual " +
        std::to_string(lo_ev.ok ? lo_ev.h : -1.0) + ")");

  Eval hi_ev = eval(t_hi);
  ++evals;
  if (hi_ev.ok && std::fabs(hi_ev.h) <= opts.constraint_tol)
    return accept(t_hi, hi_ev);
  if (!hi_ev.ok || hi_ev.h > 0.0) {
    // Even the coldest admissible beta leaves the mean income above the
    // target: sub-critical. Pin mu just below the ground level, fill the
    // excited levels from the occupancy formula and book the remainder at
    // the ground level as condensate.
    const double mu_pin = eps[0] - kPinOffset * min_spacing(grid);
    const double target_ex = pi - n_d * eps[0];
    auto excess = [&](double t) {
      double c, e;
      condensed_excited(grid, std::exp(t), mu_pin, &c, &e);
      return e;
    };
    double a = std::log(1e-12 / mean_eps), b = std::log(1e12 / mean_eps);
    int guard = 0;
    while (excess(a) < target_ex && ++guard < 300) a -= 2.0;
    guard = 0;
    while (excess(b) > target_ex && ++guard < 300) b += 2.0;
    double t_star = b;
    for (int it = 0; it < opts.max_outer; ++it) {
      double tm = 0.5 * (a + b);
      double e = excess(tm);
      if (std::fabs(e - target_ex) <= opts.constraint_tol * pi) {
        t_star = tm;
        break;
      }
      if (e > target_ex)
        a = tm;
      else
        b = tm;
      t_star = tm;
    }
    const double beta = std::exp(t_star);
    double s_exc, e_exc;
    condensed_excited(grid, beta, mu_pin, &s_exc, &e_exc);
    if (std::fabs(e_exc - target_ex) > opts.constraint_tol * pi)
      throw DomainError(
          "solve: condensed branch did not converge (income residual " +
          std::to_string((e_exc - target_ex) / pi) + ")");
    std::vector<double> a_occ(grid.size(), 0.0);
    for (std::size_t k = 1; k < grid.size(); ++k) {
      if (g[k] == 1) continue;
      double den = std::expm1(beta * (eps[k] - mu_pin));
      a_occ[k] = std::isinf(den) ? 0.0
                                 : static_cast<double>(g[k] - 1) / den;
    }
    double ground = n_d - s_exc;
    if (ground < 0.0) ground = 0.0;  // boundary of the critical income
    a_occ[0] = ground;
    EquilibriumSolution sol = assemble(params, grid, Regime::Perfect,
                                       -beta * mu_pin, beta,
                                       std::move(a_occ));
    sol.condensate_fraction = ground / n_d;
    sol.note = "condensed: chemical potential pinned at the ground level";
    return sol;
  }

  // Bracket established: h(t_lo) > tol >= ... > h(t_hi). Bisect.
  while (evals < opts.max_outer) {
    double tm = 0.5 * (t_lo + t_hi);
    Eval ev = eval(tm);
    ++evals;
    if (ev.ok && std::fabs(ev.h) <= opts.constraint_tol)
      return accept(tm, ev);
    if (!ev.ok || ev.h <= 0.0)
      t_hi = tm;
    else
      t_lo = tm;
    if (t_hi - t_lo < 1e-15) break;
  }
  throw DomainError("solve: no convergence within iteration caps "
                    "(bracket [" + std::to_string(std::exp(t_lo)) + ", " +
                    std::to_string(std::exp(t_hi)) + "] on beta)");
}

EquilibriumSolution solve_monopolistic(const EconomyParams& params,
                                       const IncomeGrid& grid,
                                       const SolveOptions& opts) {
  const auto& eps = grid.levels();
  const auto& g = grid.degeneracies();
  const double n_d = static_cast<double>(params.n_consumers);
  const double pi = params.total_income;

  if (grid.size() == 1) {
    const double beta = 1.0;
    const double y1 = std::log(n_d);
    auto w = mono_weights(grid, beta);
    return assemble(params, grid, Regime::Monopolistic,
                    std::log(static_cast<double>(g[0])) - beta * eps[0] - y1,
                    beta, mono_occupancy(w, y1));
  }

  double mean_eps = 0.0;
  for (double e : eps) mean_eps += e;
  mean_eps /= static_cast<double>(grid.size());

  struct Eval {
    double h = 0.0;
    double y1 = 0.0;
    std::vector<double> occupancy;
  };
  auto eval = [&](double t) {
    Eval r;
    double beta = std::exp(t);
    auto w = mono_weights(grid, beta);
    r.y1 = solve_y1(w, n_d, opts);
    r.occupancy = mono_occupancy(w, r.y1);
    r.h = (dot_income(r.occupancy, eps) - pi) / pi;
    return r;
  };
  auto accept = [&](double t, const Eval& ev) {
    double beta = std::exp(t);
    double alpha =
        std::log(static_cast<double>(g[0])) - beta * eps[0] - ev.y1;
    return assemble(params, grid, Regime::Monopolistic, alpha, beta,
                    ev.occupancy);
  };

  double t_lo = std::log(1e-12 / mean_eps);
  double t_hi = std::log(1e12 / mean_eps);
  int evals = 0;
  Eval lo_ev = eval(t_lo);
  ++evals;
  while (lo_ev.h <= 0.0 && evals < opts.max_outer) {
    if (std::fabs(lo_ev.h) <= opts.constraint_tol) return accept(t_lo, lo_ev);
    t_lo -= 2.0;
    lo_ev = eval(t_lo);
    ++evals;
  }
  if (lo_ev.h <= 0.0)
    throw DomainError(
        "solve: mean income is above the degeneracy-weighted grid mean; no "
        "positive-temperature equilibrium (income residual " +
        std::to_string(lo_ev.h) + ")");
  Eval hi_ev = eval(t_hi);
  ++evals;
  while (hi_ev.h > 0.0 && evals < opts.max_outer) {
    if (std::fabs(hi_ev.h) <= opts.constraint_tol) return accept(t_hi, hi_ev);
    t_hi += 2.0;
    hi_ev = eval(t_hi);
    ++evals;
  }
  if (hi_ev.h > 0.0)
    throw DomainError("solve: income residual did not change sign on the "
                      "beta bracket (residual " + std::to_string(hi_ev.h) +
                      ")");
  while (evals < opts.max_outer) {
    double tm = 0.5 * (t_lo + t_hi);
    Eval ev = eval(tm);
    ++evals;
    if (std::fabs(ev.h) <= opts.constraint_tol) return accept(tm, ev);
    if (ev.h <= 0.0)
      t_hi = tm;
    else
      t_lo = tm;
    if (t_hi - t_lo < 1e-15) break;
  }
  throw DomainError("solve: no convergence within iteration caps "
                    "(bracket [" + std::to_string(std::exp(t_lo)) + ", " +
                    std::to_string(std::exp(t_hi)) + "] on beta)");
}

}  // namespace

Occupancy occupancy_at(double alpha, double beta, const IncomeGrid& grid,
                       Regime regime) {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw InputError("occupancy_at: multipliers must be finite");
  const auto& eps = grid.levels();
  const auto& g = grid.degeneracies();
  Occupancy occ;
  occ.counts.assign(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = alpha + beta * eps[k];
    if (regime == Regime::Perfect) {
      if (!(x > 0.0))
        throw DomainError("occupancy_at: sub-critical at level " +
                          std::to_string(k) + " (alpha + beta*eps = " +
                          std::to_string(x) + " <= 0)");
      if (g[k] == 1) continue;  // zero numerator, exactly empty
      double den = std::expm1(x);
      occ.counts[k] =
          std::isinf(den) ? 0.0 : static_cast<double>(g[k] - 1) / den;
    } else {
      double a = static_cast<double>(g[k]) * std::exp(-x);
      if (!std::isfinite(a))
        throw DomainError("occupancy_at: occupancy overflows at level " +
                          std::to_string(k));
      occ.counts[k] = a;
    }
  }
  return occ;
}

EquilibriumSolution solve(const EconomyParams& params, const IncomeGrid& grid,
                          Regime regime, const SolveOptions& opts_in) {
  const SolveOptions opts = normalized(opts_in);
  params.validate();
  const auto& eps = grid.levels();
  const double m = params.total_income / params.n_consumers;
  const double scale = std::max(1.0, std::fabs(eps.back()));
  if (m < eps.front() - 1e-12 * scale || m > eps.back() + 1e-12 * scale)
    throw DomainError("solve: mean income " + std::to_string(m) +
                      " outside the grid range [" +
                      std::to_string(eps.front()) + ", " +
                      std::to_string(eps.back()) + "]");
  if (regime == Regime::Perfect) return solve_perfect(params, grid, opts);
  return solve_monopolistic(params, grid, opts);
}

std::optional<DegenerateSolution> detect_proposition1(
    const IncomeGrid& grid, Regime regime, const EconomyParams& params) {
  params.validate();
  if (regime != Regime::Perfect) return std::nullopt;
  for (long long gk : grid.degeneracies())
    if (gk != 1) return std::nullopt;
  const auto& eps = grid.levels();
  const double m = params.total_income / params.n_consumers;
  DegenerateSolution d;
  double bestd = std::fabs(eps[0] - m);
  for (std::size_t k = 1; k < eps.size(); ++k) {
    double dist = std::fabs(eps[k] - m);
    if (dist < bestd) {  // strict: ties stay with the lower level
      d.level = k;
      bestd = dist;
    }
  }
  d.occupancy.counts.assign(grid.size(), 0.0);
  d.occupancy.counts[d.level] = static_cast<double>(params.n_consumers);
  const double half = 0.5 * min_spacing(grid);
  d.snapped = bestd > half * (1.0 + 1e-12);
  return d;
}

double boltzmann_limit_check(const EquilibriumSolution& solution,
                             const IncomeGrid& grid) {
  if (solution.regime != Regime::Perfect)
    throw InputError("boltzmann_limit_check: expects a perfect-regime "
                     "solution");
  if (solution.degenerate || solution.condensate_fraction > 0.0)
    throw DomainError("boltzmann_limit_check: degenerate or condensed "
                      "solutions have no dilute limit to compare");
  if (solution.occupancy.counts.size() != grid.size())
    throw InputError("boltzmann_limit_check: solution does not match grid");
  const auto& eps = grid.levels();
  const auto& g = grid.degeneracies();
  const auto& a = solution.occupancy.counts;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (g[k] < 2)
      throw DomainError("boltzmann_limit_check: level " + std::to_string(k) +
                        " has degeneracy 1; the dilute limit needs g_k >= 2");
    if (a[k] > 0.0 && static_cast<double>(g[k]) / a[k] < 100.0)
      throw DomainError(
          "boltzmann_limit_check: dilute precondition g/a >= 100 violated "
          "at level " + std::to_string(k) + " (ratio " +
          std::to_string(static_cast<double>(g[k]) / a[k]) + ")");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = solution.alpha + solution.beta * eps[k];
    const double boltz = static_cast<double>(g[k]) * std::exp(-x);
    if (boltz == 0.0) continue;
    const double den = std::expm1(x);
    const double bose =
        std::isinf(den) ? 0.0 : static_cast<double>(g[k] - 1) / den;
    worst = std::max(worst, std::fabs(bose - boltz) / boltz);
  }
  return worst;
}

}  // namespace incomedist
