// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "incomedist/grid.hpp"
#include "incomedist/pareto.hpp"

namespace incomedist {

struct IncomeSample {
  std::vector<double> values;  // strictly positive
  std::string source_label;
};

// Single-column CSV with required header "income", one positive value per
// row. Lines starting with '#' before the header are skipped (artifacts
// carry provenance that way). Errors name the offending physical line.
IncomeSample load_income_csv(const std::string& path);
IncomeSample parse_income_csv(std::istream& in, const std::string& label);

// (value, fraction of sample >= value) over sorted unique values;
// starts at 1 and is non-increasing.
std::vector<std::pair<double, double>> empirical_ccdf(
    const IncomeSample& sample);

struct BoltzmannBodyFit {
  double temperature = 0.0;
  double ks = 0.0;
  // Set when the truncated-mean equation has no root below the bracket cap
  // (sample mean at or above upper_cut/2); temperature is then the cap.
  bool boundary = false;
};

// Maximum-likelihood exponential fit on (0, upper_cut]. The MLE temperature
// solves  mean = T - upper_cut/(e^{upper_cut/T} - 1), found by bisection to
// 1e-10 relative. Needs >= 50 body points with positive spread.
BoltzmannBodyFit fit_boltzmann_body(const IncomeSample& sample,
                                    double upper_cut);

struct BoseEinsteinBodyFit {
  double scale = 0.0;  // overall normalization C
  double mu = 0.0;
  double temperature = 0.0;
  double ks = 0.0;
  bool boundary = false;  // optimum pinned at the mu < eps_1 constraint
};

// Least-squares fit of binned counts to C (g_k-1)/(e^{(eps_k-mu)/T} - 1)
// over levels below upper_cut, constrained to mu < eps_1. Coordinate grid
// seeding over (mu, T) followed by damped Gauss-Newton to 1e-8 relative step.
// Needs >= 5 populated bins and at least one level with g_k >= 2.
BoseEinsteinBodyFit fit_bose_einstein_body(const IncomeSample& sample,
                                           const IncomeGrid& grid,
                                           double upper_cut);

enum class BodyKind { Boltzmann, BoseEinstein };

struct TwoClassFit {
  BodyKind body_kind = BodyKind::Boltzmann;
  double crossover = 0.0;  // income separating body (below) from tail
  double body_temperature = 0.0;
  double body_mu = 0.0;     // Bose-Einstein body only
  double body_scale = 0.0;  // Bose-Einstein body only
  bool body_boundary = false;
  TailFit tail;  // tail.xmin == crossover
  double body_ks = 0.0;
  double tail_ks = 0.0;
  long long n_body = 0;
  long long n_tail = 0;
  // 95th percentile of the KS distance under 200 parametric-bootstrap
  // resamples from the fitted component; observed KS above the band flags a
  // weak fit instead of hiding it.
  double body_ks_band = 0.0;
  double tail_ks_band = 0.0;
  bool weak_body = false;
  bool weak_tail = false;
};

struct TwoClassOptions {
  std::uint64_t seed = 0;       // drives the bootstrap bands
  int bootstrap_resamples = 200;
  // 0 = read MAXENT_INCOME_THREADS (default 1). Candidate fits may run on a
  // pool; results are reduced in candidate order so the fit is deterministic.
  int threads = 0;
};

// Joint body+tail fit. Crossover candidates are 199 evenly spaced percentile
// points between the 50th and 99th percentile; each candidate needs >= 50
// points on each side. The winner minimizes max(body_ks, tail_ks), ties
// toward the larger crossover. Identical sample and options give an
// identical fit. grid is required for the Bose-Einstein body and ignored
// otherwise.
TwoClassFit fit_two_class(const IncomeSample& sample, BodyKind body_kind,
                          const IncomeGrid* grid = nullptr,
                          const TwoClassOptions& opts = {});

// CSV "income,empirical_ccdf,body_ccdf,tail_ccdf" over sorted unique sample
// values; model columns are nan outside their regime. The grid is needed to
// evaluate a Bose-Einstein body (binned model) and ignored otherwise.
std::string two_class_plot_csv(const IncomeSample& sample,
                               const TwoClassFit& fit,
                               const IncomeGrid* grid = nullptr);

}  // namespace incomedist
