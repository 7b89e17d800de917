// SPDX-License-Identifier: Apache-2.0
#include "incomedist/grid.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "incomedist/errors.hpp"

namespace incomedist {

void EconomyParams::validate() const {
  if (n_consumers < 1)
    throw InputError("economy: n_consumers must be >= 1, got " +
                     std::to_string(n_consumers));
  if (!(total_income > 0.0) || !std::isfinite(total_income))
    throw InputError("economy: total_income must be positive and finite");
  if (!(quantum > 0.0) || !std::isfinite(quantum))
    throw InputError("economy: quantum must be positive and finite");
}

IncomeGrid::IncomeGrid(std::vector<double> levels,
                       std::vector<long long> degeneracies, double bin_width)
    : levels_(std::move(levels)),
      degeneracies_(std::move(degeneracies)),
      bin_width_(bin_width > 0.0 ? bin_width : 0.0) {
  if (levels_.empty()) throw InputError("grid: needs at least one level");
  if (levels_.size() != degeneracies_.size())
    throw InputError("grid: levels and degeneracies differ in length");
  if (!(levels_.front() >= 0.0) || !std::isfinite(levels_.front()))
    throw InputError("grid: lowest level must be >= 0");
  for (std::size_t k = 0; k + 1 < levels_.size(); ++k) {
    if (!(levels_[k] < levels_[k + 1]))
      throw InputError("grid: levels must be strictly increasing (level " +
                       std::to_string(k + 1) + ")");
  }
  for (std::size_t k = 0; k < degeneracies_.size(); ++k) {
    if (degeneracies_[k] < 1)
      throw InputError("grid: degeneracy at level " + std::to_string(k) +
                       " must be >= 1, got " +
                       std::to_string(degeneracies_[k]));
  }
  if (!std::isfinite(levels_.back()))
    throw InputError("grid: levels must be finite");
  // With two or more equally spaced levels the bin width is the spacing.
  if (bin_width_ == 0.0 && levels_.size() >= 2) {
    double spacing = levels_[1] - levels_[0];
    bool uniform = true;
    for (std::size_t k = 1; k + 1 < levels_.size(); ++k) {
      double s = levels_[k + 1] - levels_[k];
      if (std::fabs(s - spacing) > 1e-9 * spacing) {
        uniform = false;
        break;
      }
    }
    if (uniform) bin_width_ = spacing;
  }
}

IncomeGrid IncomeGrid::uniform(double eps_min, double eps_max, int n_levels,
                               std::vector<long long> degeneracies) {
  if (!(eps_min >= 0.0) || !(eps_max > eps_min) || !std::isfinite(eps_max))
    throw InputError("grid: requires eps_max > eps_min >= 0");
  if (n_levels < 1) throw InputError("grid: n_levels must be >= 1");
  if (static_cast<int>(degeneracies.size()) != n_levels)
    throw InputError("grid: expected " + std::to_string(n_levels) +
                     " degeneracies, got " +
                     std::to_string(degeneracies.size()));
  const double width = (eps_max - eps_min) / n_levels;
  std::vector<double> levels(n_levels);
  for (int k = 0; k < n_levels; ++k)
    levels[k] = eps_min + (k + 0.5) * width;
  return IncomeGrid(std::move(levels), std::move(degeneracies), width);
}

double IncomeGrid::left_edge() const {
  if (!has_bins()) throw DomainError("grid: bin width unknown, cannot bin");
  return levels_.front() - 0.5 * bin_width_;
}

double IncomeGrid::right_edge() const {
  if (!has_bins()) throw DomainError("grid: bin width unknown, cannot bin");
  return levels_.back() + 0.5 * bin_width_;
}

IncomeGrid build_grid(double eps_min, double eps_max, int n_levels,
                      const std::vector<long long>& degeneracies) {
  return IncomeGrid::uniform(eps_min, eps_max, n_levels, degeneracies);
}

void validate_allocation(const Allocation& alloc,
                         const EconomyParams& params) {
  params.validate();
  if (alloc.incomes.size() != static_cast<std::size_t>(params.n_consumers))
    throw InputError("allocation: expected " +
                     std::to_string(params.n_consumers) + " incomes, got " +
                     std::to_string(alloc.incomes.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < alloc.incomes.size(); ++i) {
    double r = alloc.incomes[i];
    if (!(r >= 0.0) || !std::isfinite(r))
      throw InputError("allocation: income " + std::to_string(i) +
                       " must be >= 0 and finite");
    sum += r;
  }
  if (std::fabs(sum - params.total_income) >
      1e-12 * std::fabs(params.total_income))
    throw InputError("allocation: incomes sum to " + std::to_string(sum) +
                     ", expected " + std::to_string(params.total_income));
}

double Occupancy::total() const {
  double s = 0.0;
  for (double a : counts) s += a;
  return s;
}

double Occupancy::income(const IncomeGrid& grid) const {
  if (counts.size() != grid.size())
    throw InputError("occupancy: length does not match grid");
  double s = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k)
    s += counts[k] * grid.levels()[k];
  return s;
}

bool Occupancy::is_integral() const {
  for (double a : counts) {
    if (!(a >= 0.0) || !std::isfinite(a)) return false;
    if (a != std::floor(a)) return false;
  }
  return true;
}

std::vector<long long> Occupancy::as_integers() const {
  std::vector<long long> out;
  out.reserve(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    double a = counts[k];
    if (!(a >= 0.0) || !std::isfinite(a) || a != std::floor(a))
      throw InputError("occupancy: count at level " + std::to_string(k) +
                       " is not a non-negative integer");
    out.push_back(static_cast<long long>(a));
  }
  return out;
}

Occupancy bin_allocation(const Allocation& alloc, const IncomeGrid& grid) {
  const double left = grid.left_edge();
  const double right = grid.right_edge();
  const double width = grid.bin_width();
  const long long n = static_cast<long long>(grid.size());
  Occupancy occ;
  occ.counts.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < alloc.incomes.size(); ++i) {
    double r = alloc.incomes[i];
    if (!(r >= left) || !(r <= right) || !std::isfinite(r))
      throw DomainError("bin_allocation: income " + std::to_string(i) +
                        " = " + std::to_string(r) + " outside [" +
                        std::to_string(left) + ", " + std::to_string(right) +
                        "]");
    long long k = static_cast<long long>(std::floor((r - left) / width));
    if (k >= n) k = n - 1;  // right edge of the last (closed) bin
    if (k < 0) k = 0;       // guard against -0.0 style rounding
    occ.counts[static_cast<std::size_t>(k)] += 1.0;
  }
  return occ;
}

FeasibilityReport validate_occupancy(const Occupancy& occ,
                                     const EconomyParams& params,
                                     const IncomeGrid& grid, double tol) {
  params.validate();
  if (occ.counts.size() != grid.size())
    throw InputError("occupancy: length does not match grid");
  for (std::size_t k = 0; k < occ.counts.size(); ++k)
    if (!(occ.counts[k] >= 0.0) || !std::isfinite(occ.counts[k]))
      throw InputError("occupancy: count at level " + std::to_string(k) +
                       " must be >= 0 and finite");
  FeasibilityReport rep;
  const double n = static_cast<double>(params.n_consumers);
  rep.count_residual = std::fabs(occ.total() - n) / std::max(1.0, n);
  rep.income_residual = std::fabs(occ.income(grid) - params.total_income) /
                        std::fabs(params.total_income);
  rep.count_ok = rep.count_residual <= tol;
  rep.income_ok = rep.income_residual <= tol;
  return rep;
}

}  // namespace incomedist
