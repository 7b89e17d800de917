// SPDX-License-Identifier: Apache-2.0
#include "incomedist/empirical.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "incomedist/errors.hpp"
#include "incomedist/rng.hpp"
#include "incomedist/stats.hpp"

namespace incomedist {

namespace {

constexpr long long kMinSide = 50;

void check_positive(const std::vector<double>& values, const char* who) {
  for (double x : values)
    if (!(x > 0.0) || !std::isfinite(x))
      throw InputError(std::string(who) +
                       ": incomes must be positive and finite");
}

// Truncated-exponential mean on (0, c] as a function of T; increasing from 0
// to c/2, which bounds the solvable sample means.
double truncated_mean(double t, double c) {
  const double z = c / t;
  const double e = std::expm1(z);
  return std::isinf(e) ? t : t * (1.0 - z / e);
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Piecewise-linear CDF over weighted uniform bins; used for the KS distance
// of binned Bose-Einstein body fits.
struct BinnedCdf {
  std::vector<double> lefts, rights, cum;  // cum[i] = mass strictly before bin i
  double total = 0.0;

  double operator()(double x) const {
    if (lefts.empty() || total <= 0.0) return 0.0;
    if (x < lefts.front()) return 0.0;
    if (x >= rights.back()) return 1.0;
    // bins are few; linear scan keeps this trivially correct
    for (std::size_t i = 0; i < lefts.size(); ++i) {
      if (x < lefts[i]) return cum[i] / total;
      if (x < rights[i]) {
        const double w = cum[i + 1] - cum[i];
        return (cum[i] + w * (x - lefts[i]) / (rights[i] - lefts[i])) / total;
      }
    }
    return 1.0;
  }
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const char* env = std::getenv("MAXENT_INCOME_THREADS");
  if (env != nullptr) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 256)
      return static_cast<int>(v);
  }
  return 1;
}

}  // namespace

IncomeSample parse_income_csv(std::istream& in, const std::string& label) {
  IncomeSample sample;
  sample.source_label = label;
  std::string line;
  long long lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "income")
        throw InputError(label + ": line " + std::to_string(lineno) +
                         ": expected header \"income\", got \"" + line +
                         "\"");
      header_seen = true;
      continue;
    }
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || *end != '\0')
      throw InputError(label + ": line " + std::to_string(lineno) +
                       ": not a number: \"" + line + "\"");
    if (!(v > 0.0) || !std::isfinite(v))
      throw InputError(label + ": line " + std::to_string(lineno) +
                       ": income must be positive and finite, got " + line);
    sample.values.push_back(v);
  }
  if (!header_seen)
    throw InputError(label + ": missing required header \"income\"");
  if (sample.values.empty())
    throw InputError(label + ": no data rows");
  return sample;
}

IncomeSample load_income_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_income_csv(in, path);
}

std::vector<std::pair<double, double>> empirical_ccdf(
    const IncomeSample& sample) {
  check_positive(sample.values, "empirical_ccdf");
  std::vector<double> sorted = sample.values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    out.emplace_back(sorted[i], static_cast<double>(sorted.size() - i) / n);
  }
  return out;
}

BoltzmannBodyFit fit_boltzmann_body(const IncomeSample& sample,
                                    double upper_cut) {
  if (!(upper_cut > 0.0) || !std::isfinite(upper_cut))
    throw InputError("fit_boltzmann_body: upper_cut must be positive");
  check_positive(sample.values, "fit_boltzmann_body");
  std::vector<double> body;
  for (double x : sample.values)
    if (x <= upper_cut) body.push_back(x);
  if (static_cast<long long>(body.size()) < kMinSide)
    throw DomainError("fit_boltzmann_body: fewer than " +
                      std::to_string(kMinSide) + " observations in (0, " +
                      std::to_string(upper_cut) + "]");
  double mean = 0.0;
  for (double x : body) mean += x;
  mean /= static_cast<double>(body.size());

  BoltzmannBodyFit fit;
  const double cap = 1e6 * upper_cut;
  if (mean >= 0.5 * upper_cut * (1.0 - 1e-12)) {
    // The truncated mean saturates at upper_cut/2; no finite root.
    fit.temperature = cap;
    fit.boundary = true;
  } else {
    double lo = mean;  // truncated mean is always below T
    double hi = std::max(2.0 * mean, 1e-300);
    int guard = 0;
    while (truncated_mean(hi, upper_cut) < mean && ++guard < 200) hi *= 2.0;
    for (int it = 0; it < 500 && (hi - lo) > 1e-10 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (truncated_mean(mid, upper_cut) < mean)
        lo = mid;
      else
        hi = mid;
    }
    fit.temperature = 0.5 * (lo + hi);
  }
  std::sort(body.begin(), body.end());
  const double t = fit.temperature;
  const double denom = -std::expm1(-upper_cut / t);
  fit.ks = ks_distance(body, [&](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= upper_cut) return 1.0;
    return clamp01(-std::expm1(-x / t) / denom);
  });
  return fit;
}

namespace {

// Bose-Einstein body machinery. The model for the count in bin k is
//   y_k ~ C (g_k - 1) / (e^{(eps_k - mu)/T} - 1)
// restricted to bins below the cut with g_k >= 2 (a g = 1 bin holds nobody).
// C is profiled out in closed form at every (mu, T) evaluation.
struct BeProblem {
  std::vector<double> eps, y, gm1, lefts, rights;
  double eps1 = 0.0;
  double span = 1.0;

  double f_of(double x_scaled, double gm1_k) const {
    const double den = std::expm1(x_scaled);
    return std::isinf(den) ? 0.0 : gm1_k / den;
  }

  // u, v parametrize mu = eps_1 - e^u, T = e^v (constraints built in).
  void model(double u, double v, std::vector<double>* f) const {
    const double gap = std::exp(u);
    const double t = std::exp(v);
    f->resize(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k)
      (*f)[k] = f_of((eps[k] - eps1 + gap) / t, gm1[k]);
  }

  double profile_scale(const std::vector<double>& f) const {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      num += y[k] * f[k];
      den += f[k] * f[k];
    }
    return den > 0.0 ? num / den : 0.0;
  }

  double sse(double u, double v, std::vector<double>* f_out = nullptr,
             double* c_out = nullptr) const {
    std::vector<double> f;
    model(u, v, &f);
    const double c = profile_scale(f);
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double r = c * f[k] - y[k];
      s += r * r;
    }
    if (f_out) *f_out = std::move(f);
    if (c_out) *c_out = c;
    return s;
  }
};

}  // namespace

BoseEinsteinBodyFit fit_bose_einstein_body(const IncomeSample& sample,
                                           const IncomeGrid& grid,
                                           double upper_cut) {
  if (!(upper_cut > 0.0) || !std::isfinite(upper_cut))
    throw InputError("fit_bose_einstein_body: upper_cut must be positive");
  check_positive(sample.values, "fit_bose_einstein_body");
  if (!grid.has_bins())
    throw InputError("fit_bose_einstein_body: grid carries no bin width, "
                     "cannot bin the sample");

  const auto& eps = grid.levels();
  const auto& g = grid.degeneracies();
  BeProblem prob;
  prob.eps1 = eps.front();
  std::vector<std::size_t> level_of_bin;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (eps[k] >= upper_cut || g[k] < 2) continue;
    prob.eps.push_back(eps[k]);
    prob.gm1.push_back(static_cast<double>(g[k] - 1));
    prob.y.push_back(0.0);
    prob.lefts.push_back(eps[k] - 0.5 * grid.bin_width());
    prob.rights.push_back(eps[k] + 0.5 * grid.bin_width());
    level_of_bin.push_back(k);
  }
  if (prob.eps.empty())
    throw DomainError("fit_bose_einstein_body: no level below the cut has "
                      "degeneracy >= 2");
  prob.span = std::max(grid.right_edge() - grid.left_edge(),
                       1e-300);

  // Bin the admissible body values; values in g = 1 bins or outside the grid
  // cannot be explained by this model and are left out of the fit.
  std::vector<double> kept;
  const double left0 = grid.left_edge(), w = grid.bin_width();
  for (double x : sample.values) {
    if (x > upper_cut || x < left0 || x > grid.right_edge()) continue;
    long long k = static_cast<long long>(std::floor((x - left0) / w));
    if (k < 0) k = 0;
    if (k >= static_cast<long long>(grid.size()))
      k = static_cast<long long>(grid.size()) - 1;
    const auto it = std::find(level_of_bin.begin(), level_of_bin.end(),
                              static_cast<std::size_t>(k));
    if (it == level_of_bin.end()) continue;
    prob.y[static_cast<std::size_t>(it - level_of_bin.begin())] += 1.0;
    kept.push_back(x);
  }
  long long populated = 0;
  for (double yk : prob.y)
    if (yk > 0.0) ++populated;
  if (populated < 5)
    throw DomainError("fit_bose_einstein_body: need >= 5 populated bins "
                      "below the cut, have " + std::to_string(populated));

  // Coordinate grid over (mu gap, T), log-spaced, then damped Gauss-Newton
  // with Marquardt scaling on the profiled residuals.
  double best_u = 0.0, best_v = 0.0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 25; ++i) {
    const double u = std::log(prob.span) + std::log(1e-6) +
                     (std::log(1e2) - std::log(1e-6)) * i / 24.0;
    for (int j = 0; j < 25; ++j) {
      const double v = std::log(prob.span) + std::log(1e-3) +
                       (std::log(1e3) - std::log(1e-3)) * j / 24.0;
      const double s = prob.sse(u, v);
      if (s < best_sse) {
        best_sse = s;
        best_u = u;
        best_v = v;
      }
    }
  }

  double u = best_u, v = best_v;
  double sse = best_sse;
  double lambda = 1e-3;
  for (int it = 0; it < 200; ++it) {
    std::vector<double> f;
    double c = 0.0;
    sse = prob.sse(u, v, &f, &c);
    // Analytic Jacobian of r_k = C f_k - y_k in (u, v), C held fixed:
    //   x_k = (eps_k - eps1 + e^u)/T,  df/dx = -(g-1)(E+1)/E^2,  E = expm1(x)
    //   dx/du = e^u / T,  dx/dv = -x_k
    const double gap = std::exp(u), t = std::exp(v);
    double a00 = 0.0, a01 = 0.0, a11 = 0.0, g0 = 0.0, g1 = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double x = (prob.eps[k] - prob.eps1 + gap) / t;
      const double e = std::expm1(x);
      if (std::isinf(e) || e == 0.0) continue;
      const double dfdx = -prob.gm1[k] * (e + 1.0) / (e * e);
      const double ju = c * dfdx * (gap / t);
      const double jv = c * dfdx * (-x);
      const double r = c * f[k] - prob.y[k];
      a00 += ju * ju;
      a01 += ju * jv;
      a11 += jv * jv;
      g0 += ju * r;
      g1 += jv * r;
    }
    bool stepped = false;
    for (int tries = 0; tries < 30; ++tries) {
      const double m00 = a00 * (1.0 + lambda), m11 = a11 * (1.0 + lambda);
      const double det = m00 * m11 - a01 * a01;
      if (!(std::fabs(det) > 0.0)) {
        lambda *= 10.0;
        continue;
      }
      const double du = (-g0 * m11 + g1 * a01) / det;
      const double dv = (-g1 * m00 + g0 * a01) / det;
      const double s_new = prob.sse(u + du, v + dv);
      if (s_new <= sse) {
        u += du;
        v += dv;
        sse = s_new;
        lambda = std::max(1e-12, lambda / 10.0);
        stepped = true;
        if (std::max(std::fabs(du), std::fabs(dv)) <
            1e-8 * std::max(1.0, std::max(std::fabs(u), std::fabs(v))))
          it = 200;  // converged
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) break;  // stuck: accept the current point
  }

  std::vector<double> f;
  double c = 0.0;
  prob.sse(u, v, &f, &c);
  BoseEinsteinBodyFit fit;
  fit.scale = c;
  fit.mu = prob.eps1 - std::exp(u);
  fit.temperature = std::exp(v);
  fit.boundary = std::exp(u) < 1e-8 * prob.span;

  BinnedCdf cdf;
  cdf.lefts = prob.lefts;
  cdf.rights = prob.rights;
  cdf.cum.assign(f.size() + 1, 0.0);
  for (std::size_t k = 0; k < f.size(); ++k)
    cdf.cum[k + 1] = cdf.cum[k] + c * f[k];
  cdf.total = cdf.cum.back();
  std::sort(kept.begin(), kept.end());
  fit.ks = ks_distance(kept, [&](double x) { return cdf(x); });
  return fit;
}

namespace {

struct CandidateFit {
  bool ok = false;
  double crossover = 0.0;
  double score = std::numeric_limits<double>::infinity();
  BoltzmannBodyFit boltz;
  BoseEinsteinBodyFit be;
  TailFit tail;
};

CandidateFit evaluate_candidate(const std::vector<double>& sorted,
                                double xc, BodyKind kind,
                                const IncomeGrid* grid) {
  CandidateFit r;
  r.crossover = xc;
  const auto split =
      std::lower_bound(sorted.begin(), sorted.end(), xc) - sorted.begin();
  const long long n_body = split;
  const long long n_tail = static_cast<long long>(sorted.size()) - split;
  if (n_body < kMinSide || n_tail < kMinSide) return r;
  IncomeSample body;
  body.values.assign(sorted.begin(), sorted.begin() + split);
  try {
    double body_ks = 0.0;
    if (kind == BodyKind::Boltzmann) {
      r.boltz = fit_boltzmann_body(body, xc);
      body_ks = r.boltz.ks;
    } else {
      r.be = fit_bose_einstein_body(body, *grid, xc);
      body_ks = r.be.ks;
    }
    r.tail = fit_power_law_at(sorted, xc);
    r.score = std::max(body_ks, r.tail.ks);
    r.ok = true;
  } catch (const std::exception&) {
    r.ok = false;  // candidate infeasible (e.g. too few populated bins)
  }
  return r;
}

double percentile(const std::vector<double>& sorted, double p) {
  const double rank = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - std::floor(rank);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double ks_band_95(std::vector<double> draws) {
  std::sort(draws.begin(), draws.end());
  const std::size_t idx = static_cast<std::size_t>(
      std::ceil(0.95 * static_cast<double>(draws.size()))) - 1;
  return draws[std::min(idx, draws.size() - 1)];
}

}  // namespace

TwoClassFit fit_two_class(const IncomeSample& sample, BodyKind body_kind,
                          const IncomeGrid* grid,
                          const TwoClassOptions& opts) {
  check_positive(sample.values, "fit_two_class");
  if (body_kind == BodyKind::BoseEinstein && grid == nullptr)
    throw InputError("fit_two_class: Bose-Einstein body needs a grid");
  std::vector<double> sorted = sample.values;
  std::sort(sorted.begin(), sorted.end());
  if (static_cast<long long>(sorted.size()) < 2 * kMinSide)
    throw DomainError("fit_two_class: need at least " +
                      std::to_string(2 * kMinSide) + " observations");

  // Crossover candidates: 199 percentile points between the 50th and 99th.
  std::vector<double> candidates;
  for (int j = 0; j < 199; ++j) {
    const double p = 50.0 + 49.0 * static_cast<double>(j) / 198.0;
    const double xc = percentile(sorted, p);
    if (candidates.empty() || xc > candidates.back())
      candidates.push_back(xc);
  }

  std::vector<CandidateFit> results(candidates.size());
  const int threads =
      std::min<int>(resolve_threads(opts.threads),
                    static_cast<int>(candidates.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i)
      results[i] = evaluate_candidate(sorted, candidates[i], body_kind, grid);
  } else {
    std::atomic<std::size_t> head{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = head.fetch_add(1);
        if (i >= candidates.size()) return;
        results[i] =
            evaluate_candidate(sorted, candidates[i], body_kind, grid);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Reduce in candidate order; ties go to the larger crossover, so a later
  // candidate replaces an equal score.
  const CandidateFit* best = nullptr;
  for (const auto& r : results) {
    if (!r.ok) continue;
    if (best == nullptr || r.score <= best->score) best = &r;
  }
  if (best == nullptr)
    throw DomainError("fit_two_class: no crossover candidate admits both a "
                      "body and a tail fit");

  TwoClassFit fit;
  fit.body_kind = body_kind;
  fit.crossover = best->crossover;
  fit.tail = best->tail;
  fit.tail_ks = best->tail.ks;
  const auto split = std::lower_bound(sorted.begin(), sorted.end(),
                                      fit.crossover) -
                     sorted.begin();
  fit.n_body = split;
  fit.n_tail = static_cast<long long>(sorted.size()) - split;
  if (body_kind == BodyKind::Boltzmann) {
    fit.body_temperature = best->boltz.temperature;
    fit.body_boundary = best->boltz.boundary;
    fit.body_ks = best->boltz.ks;
  } else {
    fit.body_temperature = best->be.temperature;
    fit.body_mu = best->be.mu;
    fit.body_scale = best->be.scale;
    fit.body_boundary = best->be.boundary;
    fit.body_ks = best->be.ks;
  }

  // Parametric bootstrap bands: resample each component from its fitted
  // model, refit with the same machinery, take the 95th percentile KS.
  const int resamples = opts.bootstrap_resamples > 0
                            ? opts.bootstrap_resamples
                            : 200;
  {
    Rng rng(opts.seed, 1);
    std::vector<double> draws;
    draws.reserve(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
      IncomeSample re;
      re.values.reserve(static_cast<std::size_t>(fit.n_body));
      if (body_kind == BodyKind::Boltzmann) {
        const double t = fit.body_temperature;
        const double wtrunc = -std::expm1(-fit.crossover / t);
        for (long long i = 0; i < fit.n_body; ++i)
          re.values.push_back(
              -t * std::log1p(-rng.uniform01() * wtrunc));
      } else {
        // Draw bins by fitted weight, then uniformly within the bin.
        std::vector<double> lefts, rights, weights;
        const auto& eps = grid->levels();
        const auto& g = grid->degeneracies();
        for (std::size_t k = 0; k < grid->size(); ++k) {
          if (eps[k] >= fit.crossover || g[k] < 2) continue;
          const double den =
              std::expm1((eps[k] - fit.body_mu) / fit.body_temperature);
          const double f = std::isinf(den) || den == 0.0
                               ? 0.0
                               : static_cast<double>(g[k] - 1) / den;
          lefts.push_back(eps[k] - 0.5 * grid->bin_width());
          rights.push_back(eps[k] + 0.5 * grid->bin_width());
          weights.push_back(fit.body_scale * f);
        }
        double total = 0.0;
        for (double wk : weights) total += wk;
        for (long long i = 0; i < fit.n_body && total > 0.0; ++i) {
          double pick = rng.uniform01() * total;
          std::size_t k = 0;
          while (k + 1 < weights.size() && pick > weights[k]) {
            pick -= weights[k];
            ++k;
          }
          re.values.push_back(lefts[k] +
                              rng.uniform01() * (rights[k] - lefts[k]));
        }
      }
      try {
        const double ks =
            body_kind == BodyKind::Boltzmann
                ? fit_boltzmann_body(re, fit.crossover).ks
                : fit_bose_einstein_body(re, *grid, fit.crossover).ks;
        draws.push_back(ks);
      } catch (const std::exception&) {
        draws.push_back(1.0);  // refit infeasible: count as a bad draw
      }
    }
    fit.body_ks_band = ks_band_95(std::move(draws));
    fit.weak_body = fit.body_ks > fit.body_ks_band;
  }
  {
    Rng rng(opts.seed, 2);
    std::vector<double> draws;
    draws.reserve(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
      std::vector<double> re;
      re.reserve(static_cast<std::size_t>(fit.n_tail));
      for (long long i = 0; i < fit.n_tail; ++i)
        re.push_back(fit.tail.xmin *
                     std::exp(rng.exponential() / fit.tail.gamma));
      try {
        draws.push_back(fit_power_law_at(std::move(re), fit.tail.xmin).ks);
      } catch (const std::exception&) {
        draws.push_back(1.0);
      }
    }
    fit.tail_ks_band = ks_band_95(std::move(draws));
    fit.weak_tail = fit.tail_ks > fit.tail_ks_band;
  }
  return fit;
}

std::string two_class_plot_csv(const IncomeSample& sample,
                               const TwoClassFit& fit,
                               const IncomeGrid* grid) {
  const auto ccdf = empirical_ccdf(sample);
  // The Bose-Einstein body is a binned model; its CCDF needs the grid.
  BinnedCdf becdf;
  if (fit.body_kind == BodyKind::BoseEinstein && grid != nullptr) {
    const auto& eps = grid->levels();
    const auto& g = grid->degeneracies();
    becdf.cum.push_back(0.0);
    for (std::size_t k = 0; k < grid->size(); ++k) {
      if (eps[k] >= fit.crossover || g[k] < 2) continue;
      const double den =
          std::expm1((eps[k] - fit.body_mu) / fit.body_temperature);
      const double f = std::isinf(den) || den == 0.0
                           ? 0.0
                           : static_cast<double>(g[k] - 1) / den;
      becdf.lefts.push_back(eps[k] - 0.5 * grid->bin_width());
      becdf.rights.push_back(eps[k] + 0.5 * grid->bin_width());
      becdf.total += fit.body_scale * f;
      becdf.cum.push_back(becdf.total);
    }
  }
  std::ostringstream out;
  out << "income,empirical_ccdf,body_ccdf,tail_ccdf\n";
  char buf[160];
  for (const auto& [x, e] : ccdf) {
    double body = std::numeric_limits<double>::quiet_NaN();
    double tail = std::numeric_limits<double>::quiet_NaN();
    if (x >= fit.crossover) {
      tail = std::pow(fit.tail.xmin / x, fit.tail.gamma);
    } else if (fit.body_kind == BodyKind::Boltzmann) {
      // Conditional CCDF of the fitted truncated exponential on the body.
      const double denom = -std::expm1(-fit.crossover / fit.body_temperature);
      body = clamp01(1.0 + std::expm1(-x / fit.body_temperature) / denom);
    } else if (!becdf.lefts.empty()) {
      body = clamp01(1.0 - becdf(x));
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x, e, body,
                  tail);
    out << buf;
  }
  return out.str();
}

}  // namespace incomedist
