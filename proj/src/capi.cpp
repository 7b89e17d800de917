// SPDX-License-Identifier: Apache-2.0
#include "incomedist.h"

#include <cstring>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incomedist/empirical.hpp"
#include "incomedist/ensemble.hpp"
#include "incomedist/errors.hpp"
#include "incomedist/grid.hpp"
#include "incomedist/json_io.hpp"
#include "incomedist/maxent.hpp"
#include "incomedist/multiplicity.hpp"
#include "incomedist/pareto.hpp"

using incomedist::Allocation;
using incomedist::BodyKind;
using incomedist::EconomyParams;
using incomedist::EnsembleMode;
using incomedist::EnsembleSpec;
using incomedist::IncomeGrid;
using incomedist::Occupancy;
using incomedist::Regime;

struct id_grid {
  IncomeGrid grid;
};
struct id_solution {
  incomedist::EquilibriumSolution sol;
  IncomeGrid grid;
};
struct id_tailfit {
  incomedist::TailFit fit;
};
struct id_twoclass {
  incomedist::TwoClassFit fit;
  incomedist::IncomeSample sample;
  std::optional<IncomeGrid> grid;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

double* dup_doubles(const std::vector<double>& v) {
  double* p = new double[v.size()];
  std::memcpy(p, v.data(), v.size() * sizeof(double));
  return p;
}

template <typename F>
id_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const incomedist::InputError& e) {
    g_last_error = e.what();
    return ID_ERR_USAGE;
  } catch (const incomedist::DomainError& e) {
    g_last_error = e.what();
    return ID_ERR_DOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ID_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ID_ERR_INTERNAL;
  }
}

id_status usage(const char* msg) {
  g_last_error = msg;
  return ID_ERR_USAGE;
}

Regime to_regime(id_regime r) {
  return r == ID_REGIME_PERFECT ? Regime::Perfect : Regime::Monopolistic;
}

EnsembleMode to_mode(id_ensemble_mode m) {
  switch (m) {
    case ID_MODE_ENUMERATE_LABELED:
      return EnsembleMode::EnumerateLabeled;
    case ID_MODE_ENUMERATE_UNLABELED:
      return EnsembleMode::EnumerateUnlabeled;
    case ID_MODE_SAMPLE_CONTINUOUS:
      return EnsembleMode::SampleContinuous;
    default:
      return EnsembleMode::SampleDiscrete;
  }
}

Occupancy occupancy_of(const id_grid* grid, const double* counts,
                       int n_counts) {
  if (n_counts < 0 ||
      static_cast<std::size_t>(n_counts) != grid->grid.size())
    throw incomedist::InputError(
        "occupancy length does not match the grid");
  Occupancy occ;
  occ.counts.assign(counts, counts + n_counts);
  return occ;
}

std::string allocations_csv(const EnsembleSpec& spec) {
  std::string out;
  char buf[32];
  auto append_row = [&](const std::vector<double>& incomes) {
    for (std::size_t i = 0; i < incomes.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", incomes[i]);
      out += buf;
      out += (i + 1 == incomes.size()) ? '\n' : ',';
    }
  };
  if (spec.mode == EnsembleMode::EnumerateLabeled ||
      spec.mode == EnsembleMode::EnumerateUnlabeled) {
    std::vector<double> incomes(
        static_cast<std::size_t>(spec.params.n_consumers));
    incomedist::enumerate_allocations(
        spec, [&](const std::vector<long long>& r) {
          for (std::size_t i = 0; i < r.size(); ++i)
            incomes[i] = static_cast<double>(r[i]) * spec.params.quantum;
          append_row(incomes);
        });
  } else {
    if (spec.sample_count == 0)
      throw incomedist::InputError(
          "sampling requires sample_count >= 1");
    incomedist::AllocationSampler sampler(spec);
    for (std::uint64_t i = 0; i < spec.sample_count; ++i)
      append_row(sampler.next().incomes);
  }
  return out;
}

}  // namespace

extern "C" {

const char* id_version(void) { return "0.1.0"; }

const char* id_last_error(void) { return g_last_error.c_str(); }

void id_string_free(char* s) { delete[] s; }
void id_doubles_free(double* p) { delete[] p; }

/* ---- income grids ---- */

id_status id_grid_build(double eps_min, double eps_max, int n_levels,
                        const long long* degeneracies, id_grid** out) {
  if (degeneracies == nullptr || out == nullptr)
    return usage("id_grid_build: NULL argument");
  return guarded([&] {
    std::vector<long long> degs(degeneracies,
                                degeneracies + (n_levels > 0 ? n_levels : 0));
    *out = new id_grid{
        incomedist::build_grid(eps_min, eps_max, n_levels, degs)};
    return ID_OK;
  });
}

id_status id_grid_create(const double* levels, const long long* degeneracies,
                         int n_levels, double bin_width, id_grid** out) {
  if (levels == nullptr || degeneracies == nullptr || out == nullptr)
    return usage("id_grid_create: NULL argument");
  if (n_levels < 1) return usage("id_grid_create: n_levels must be >= 1");
  return guarded([&] {
    *out = new id_grid{IncomeGrid(
        std::vector<double>(levels, levels + n_levels),
        std::vector<long long>(degeneracies, degeneracies + n_levels),
        bin_width > 0.0 ? bin_width : 0.0)};
    return ID_OK;
  });
}

id_status id_grid_from_json(const char* json_text, id_grid** out) {
  if (json_text == nullptr || out == nullptr)
    return usage("id_grid_from_json: NULL argument");
  return guarded([&] {
    *out = new id_grid{incomedist::grid_from_json_text(json_text)};
    return ID_OK;
  });
}

id_status id_grid_to_json(const id_grid* grid, char** json_out) {
  if (grid == nullptr || json_out == nullptr)
    return usage("id_grid_to_json: NULL argument");
  return guarded([&] {
    *json_out = dup_string(incomedist::grid_to_json(grid->grid).dump());
    return ID_OK;
  });
}

int id_grid_size(const id_grid* grid) {
  return grid == nullptr ? 0 : static_cast<int>(grid->grid.size());
}

id_status id_grid_levels(const id_grid* grid, double* levels_out) {
  if (grid == nullptr || levels_out == nullptr)
    return usage("id_grid_levels: NULL argument");
  std::memcpy(levels_out, grid->grid.levels().data(),
              grid->grid.size() * sizeof(double));
  g_last_error.clear();
  return ID_OK;
}

id_status id_grid_degeneracies(const id_grid* grid, long long* deg_out) {
  if (grid == nullptr || deg_out == nullptr)
    return usage("id_grid_degeneracies: NULL argument");
  std::memcpy(deg_out, grid->grid.degeneracies().data(),
              grid->grid.size() * sizeof(long long));
  g_last_error.clear();
  return ID_OK;
}

void id_grid_free(id_grid* grid) { delete grid; }

id_status id_bin_allocation(const id_grid* grid, const double* incomes,
                            long long n_incomes, double* counts_out) {
  if (grid == nullptr || incomes == nullptr || counts_out == nullptr)
    return usage("id_bin_allocation: NULL argument");
  if (n_incomes < 1) return usage("id_bin_allocation: need n_incomes >= 1");
  return guarded([&] {
    Allocation alloc;
    alloc.incomes.assign(incomes, incomes + n_incomes);
    Occupancy occ = incomedist::bin_allocation(alloc, grid->grid);
    std::memcpy(counts_out, occ.counts.data(),
                occ.counts.size() * sizeof(double));
    return ID_OK;
  });
}

id_status id_validate_occupancy(const id_grid* grid, const double* counts,
                                int n_counts, long long n_consumers,
                                double total_income, double tol,
                                int* count_ok, int* income_ok,
                                double* count_residual,
                                double* income_residual) {
  if (grid == nullptr || counts == nullptr)
    return usage("id_validate_occupancy: NULL argument");
  return guarded([&] {
    EconomyParams params{n_consumers, total_income, 1.0};
    auto report = incomedist::validate_occupancy(
        occupancy_of(grid, counts, n_counts), params, grid->grid,
        tol > 0.0 ? tol : 1e-10);
    if (count_ok) *count_ok = report.count_ok ? 1 : 0;
    if (income_ok) *income_ok = report.income_ok ? 1 : 0;
    if (count_residual) *count_residual = report.count_residual;
    if (income_residual) *income_residual = report.income_residual;
    return ID_OK;
  });
}

/* ---- microstate counting ---- */

id_status id_log_omega(const id_grid* grid, const double* counts, int n_counts,
                       id_regime regime, double* out) {
  if (grid == nullptr || counts == nullptr || out == nullptr)
    return usage("id_log_omega: NULL argument");
  return guarded([&] {
    *out = incomedist::log_omega(occupancy_of(grid, counts, n_counts),
                                 grid->grid, to_regime(regime));
    return ID_OK;
  });
}

id_status id_log_omega_stirling(const id_grid* grid, const double* counts,
                                int n_counts, double* out) {
  if (grid == nullptr || counts == nullptr || out == nullptr)
    return usage("id_log_omega_stirling: NULL argument");
  return guarded([&] {
    *out = incomedist::log_omega_stirling(
        occupancy_of(grid, counts, n_counts), grid->grid);
    return ID_OK;
  });
}

id_status id_omega_exact(const id_grid* grid, const double* counts,
                         int n_counts, id_regime regime, double* log_out,
                         char** exact_out) {
  if (grid == nullptr || counts == nullptr || log_out == nullptr)
    return usage("id_omega_exact: NULL argument");
  return guarded([&] {
    auto m = incomedist::omega_exact(occupancy_of(grid, counts, n_counts),
                                     grid->grid, to_regime(regime),
                                     exact_out != nullptr);
    *log_out = m.log_omega;
    if (exact_out != nullptr) *exact_out = dup_string(m.exact->str());
    return ID_OK;
  });
}

id_status id_oracle_count(const id_grid* grid, const double* counts,
                          int n_counts, id_regime regime, char** exact_out) {
  if (grid == nullptr || counts == nullptr || exact_out == nullptr)
    return usage("id_oracle_count: NULL argument");
  return guarded([&] {
    *exact_out = dup_string(
        incomedist::oracle_count(occupancy_of(grid, counts, n_counts),
                                 grid->grid, to_regime(regime))
            .str());
    return ID_OK;
  });
}

/* ---- equilibrium solver ---- */

id_status id_solve(const id_grid* grid, long long n_consumers,
                   double total_income, id_regime regime,
                   const id_solve_options* options, id_solution** out) {
  if (grid == nullptr || out == nullptr)
    return usage("id_solve: NULL argument");
  return guarded([&] {
    incomedist::SolveOptions opts;
    if (options != nullptr) {
      if (options->constraint_tol > 0.0)
        opts.constraint_tol = options->constraint_tol;
      if (options->inner_tol > 0.0) opts.inner_tol = options->inner_tol;
      if (options->max_outer > 0) opts.max_outer = options->max_outer;
      if (options->max_inner > 0) opts.max_inner = options->max_inner;
    }
    EconomyParams params{n_consumers, total_income, 1.0};
    *out = new id_solution{
        incomedist::solve(params, grid->grid, to_regime(regime), opts),
        grid->grid};
    return ID_OK;
  });
}

double id_solution_alpha(const id_solution* s) {
  return s == nullptr ? 0.0 : s->sol.alpha;
}
double id_solution_beta(const id_solution* s) {
  return s == nullptr ? 0.0 : s->sol.beta;
}
double id_solution_mu(const id_solution* s) {
  return s == nullptr ? 0.0 : s->sol.mu;
}
double id_solution_temperature(const id_solution* s) {
  return s == nullptr ? 0.0 : s->sol.temperature;
}
double id_solution_condensate_fraction(const id_solution* s) {
  return s == nullptr ? 0.0 : s->sol.condensate_fraction;
}
int id_solution_degenerate(const id_solution* s) {
  return s != nullptr && s->sol.degenerate ? 1 : 0;
}
int id_solution_levels(const id_solution* s) {
  return s == nullptr ? 0
                      : static_cast<int>(s->sol.occupancy.counts.size());
}

id_status id_solution_occupancy(const id_solution* s, double* counts_out) {
  if (s == nullptr || counts_out == nullptr)
    return usage("id_solution_occupancy: NULL argument");
  std::memcpy(counts_out, s->sol.occupancy.counts.data(),
              s->sol.occupancy.counts.size() * sizeof(double));
  g_last_error.clear();
  return ID_OK;
}

id_status id_solution_to_json(const id_solution* s, char** json_out) {
  if (s == nullptr || json_out == nullptr)
    return usage("id_solution_to_json: NULL argument");
  return guarded([&] {
    *json_out =
        dup_string(incomedist::solution_to_json(s->sol, s->grid).dump());
    return ID_OK;
  });
}

void id_solution_free(id_solution* s) { delete s; }

id_status id_occupancy_at(const id_grid* grid, double alpha, double beta,
                          id_regime regime, double* counts_out) {
  if (grid == nullptr || counts_out == nullptr)
    return usage("id_occupancy_at: NULL argument");
  return guarded([&] {
    Occupancy occ = incomedist::occupancy_at(alpha, beta, grid->grid,
                                             to_regime(regime));
    std::memcpy(counts_out, occ.counts.data(),
                occ.counts.size() * sizeof(double));
    return ID_OK;
  });
}

id_status id_proposition1(const id_grid* grid, id_regime regime,
                          long long n_consumers, double total_income,
                          int* found, double* counts_out, int* snapped) {
  if (grid == nullptr || found == nullptr)
    return usage("id_proposition1: NULL argument");
  return guarded([&] {
    EconomyParams params{n_consumers, total_income, 1.0};
    auto det = incomedist::detect_proposition1(grid->grid, to_regime(regime),
                                               params);
    *found = det.has_value() ? 1 : 0;
    if (det.has_value()) {
      if (counts_out != nullptr)
        std::memcpy(counts_out, det->occupancy.counts.data(),
                    det->occupancy.counts.size() * sizeof(double));
      if (snapped != nullptr) *snapped = det->snapped ? 1 : 0;
    }
    return ID_OK;
  });
}

id_status id_boltzmann_limit_check(const id_solution* s, const id_grid* grid,
                                   double* max_rel_deviation) {
  if (s == nullptr || grid == nullptr || max_rel_deviation == nullptr)
    return usage("id_boltzmann_limit_check: NULL argument");
  return guarded([&] {
    *max_rel_deviation =
        incomedist::boltzmann_limit_check(s->sol, grid->grid);
    return ID_OK;
  });
}

/* ---- uniform ensemble ---- */

id_status id_ensemble_histogram_json(long long n_consumers,
                                     double total_income, double quantum,
                                     id_ensemble_mode mode,
                                     unsigned long long sample_count,
                                     unsigned long long seed,
                                     const id_grid* grid, char** json_out) {
  if (grid == nullptr || json_out == nullptr)
    return usage("id_ensemble_histogram_json: NULL argument");
  return guarded([&] {
    EnsembleSpec spec;
    spec.params = EconomyParams{n_consumers, total_income, quantum};
    spec.mode = to_mode(mode);
    spec.sample_count = sample_count;
    spec.rng_seed = seed;
    auto hist = incomedist::macrostate_histogram(spec, grid->grid);
    *json_out = dup_string(incomedist::histogram_to_json(hist).dump());
    return ID_OK;
  });
}

id_status id_sample_allocations_csv(long long n_consumers, double total_income,
                                    double quantum, id_ensemble_mode mode,
                                    unsigned long long sample_count,
                                    unsigned long long seed, char** csv_out) {
  if (csv_out == nullptr)
    return usage("id_sample_allocations_csv: NULL argument");
  if (mode != ID_MODE_SAMPLE_CONTINUOUS && mode != ID_MODE_SAMPLE_DISCRETE)
    return usage("id_sample_allocations_csv: mode must be a sampling mode");
  return guarded([&] {
    EnsembleSpec spec;
    spec.params = EconomyParams{n_consumers, total_income, quantum};
    spec.mode = to_mode(mode);
    spec.sample_count = sample_count;
    spec.rng_seed = seed;
    *csv_out = dup_string(allocations_csv(spec));
    return ID_OK;
  });
}

id_status id_enumerate_allocations_csv(long long n_consumers,
                                       double total_income, double quantum,
                                       id_ensemble_mode mode, char** csv_out) {
  if (csv_out == nullptr)
    return usage("id_enumerate_allocations_csv: NULL argument");
  if (mode != ID_MODE_ENUMERATE_LABELED && mode != ID_MODE_ENUMERATE_UNLABELED)
    return usage(
        "id_enumerate_allocations_csv: mode must be an enumeration mode");
  return guarded([&] {
    EnsembleSpec spec;
    spec.params = EconomyParams{n_consumers, total_income, quantum};
    spec.mode = to_mode(mode);
    *csv_out = dup_string(allocations_csv(spec));
    return ID_OK;
  });
}

/* ---- power-law tail ---- */

id_status id_pareto_generate(long long n_nodes, long long m,
                             unsigned long long seed, double scale,
                             double** incomes_out, long long* n_out) {
  if (incomes_out == nullptr || n_out == nullptr)
    return usage("id_pareto_generate: NULL argument");
  return guarded([&] {
    auto graph = incomedist::generate_preferential_attachment(n_nodes, m,
                                                              seed);
    auto incomes = incomedist::degrees_to_income(graph, scale);
    *incomes_out = dup_doubles(incomes);
    *n_out = static_cast<long long>(incomes.size());
    return ID_OK;
  });
}

id_status id_fit_power_law(const double* values, long long n,
                           id_tailfit** out) {
  if (values == nullptr || out == nullptr)
    return usage("id_fit_power_law: NULL argument");
  if (n < 1) return usage("id_fit_power_law: need n >= 1");
  return guarded([&] {
    *out = new id_tailfit{
        incomedist::fit_power_law(std::vector<double>(values, values + n))};
    return ID_OK;
  });
}

id_status id_fit_power_law_at(const double* values, long long n, double xmin,
                              id_tailfit** out) {
  if (values == nullptr || out == nullptr)
    return usage("id_fit_power_law_at: NULL argument");
  if (n < 1) return usage("id_fit_power_law_at: need n >= 1");
  return guarded([&] {
    *out = new id_tailfit{incomedist::fit_power_law_at(
        std::vector<double>(values, values + n), xmin)};
    return ID_OK;
  });
}

double id_tailfit_gamma(const id_tailfit* f) {
  return f == nullptr ? 0.0 : f->fit.gamma;
}
double id_tailfit_density_exponent(const id_tailfit* f) {
  return f == nullptr ? 0.0 : f->fit.density_exponent;
}
double id_tailfit_xmin(const id_tailfit* f) {
  return f == nullptr ? 0.0 : f->fit.xmin;
}
double id_tailfit_ks(const id_tailfit* f) {
  return f == nullptr ? 0.0 : f->fit.ks;
}
long long id_tailfit_n_tail(const id_tailfit* f) {
  return f == nullptr ? 0 : f->fit.n_tail;
}

id_status id_tailfit_to_json(const id_tailfit* f, char** json_out) {
  if (f == nullptr || json_out == nullptr)
    return usage("id_tailfit_to_json: NULL argument");
  return guarded([&] {
    *json_out = dup_string(incomedist::tail_fit_to_json(f->fit).dump());
    return ID_OK;
  });
}

void id_tailfit_free(id_tailfit* f) { delete f; }

/* ---- empirical two-class fit ---- */

id_status id_load_income_csv(const char* path, double** values_out,
                             long long* n_out) {
  if (path == nullptr || values_out == nullptr || n_out == nullptr)
    return usage("id_load_income_csv: NULL argument");
  return guarded([&] {
    auto sample = incomedist::load_income_csv(path);
    *values_out = dup_doubles(sample.values);
    *n_out = static_cast<long long>(sample.values.size());
    return ID_OK;
  });
}

id_status id_fit_boltzmann_body(const double* values, long long n,
                                double upper_cut, double* temperature_out,
                                double* ks_out, int* boundary_out) {
  if (values == nullptr || temperature_out == nullptr || ks_out == nullptr)
    return usage("id_fit_boltzmann_body: NULL argument");
  if (n < 1) return usage("id_fit_boltzmann_body: need n >= 1");
  return guarded([&] {
    incomedist::IncomeSample sample;
    sample.values.assign(values, values + n);
    auto fit = incomedist::fit_boltzmann_body(sample, upper_cut);
    *temperature_out = fit.temperature;
    *ks_out = fit.ks;
    if (boundary_out != nullptr) *boundary_out = fit.boundary ? 1 : 0;
    return ID_OK;
  });
}

id_status id_fit_bose_einstein_body(const double* values, long long n,
                                    const id_grid* grid, double upper_cut,
                                    double* scale_out, double* mu_out,
                                    double* temperature_out, double* ks_out,
                                    int* boundary_out) {
  if (values == nullptr || grid == nullptr || scale_out == nullptr ||
      mu_out == nullptr || temperature_out == nullptr || ks_out == nullptr)
    return usage("id_fit_bose_einstein_body: NULL argument");
  if (n < 1) return usage("id_fit_bose_einstein_body: need n >= 1");
  return guarded([&] {
    incomedist::IncomeSample sample;
    sample.values.assign(values, values + n);
    auto fit =
        incomedist::fit_bose_einstein_body(sample, grid->grid, upper_cut);
    *scale_out = fit.scale;
    *mu_out = fit.mu;
    *temperature_out = fit.temperature;
    *ks_out = fit.ks;
    if (boundary_out != nullptr) *boundary_out = fit.boundary ? 1 : 0;
    return ID_OK;
  });
}

id_status id_fit_two_class(const double* values, long long n,
                           id_body_kind body_kind, const id_grid* grid,
                           unsigned long long seed, int threads,
                           id_twoclass** out) {
  if (values == nullptr || out == nullptr)
    return usage("id_fit_two_class: NULL argument");
  if (n < 1) return usage("id_fit_two_class: need n >= 1");
  return guarded([&] {
    incomedist::IncomeSample sample;
    sample.values.assign(values, values + n);
    incomedist::TwoClassOptions opts;
    opts.seed = seed;
    opts.threads = threads;
    const BodyKind kind = body_kind == ID_BODY_BOLTZMANN
                              ? BodyKind::Boltzmann
                              : BodyKind::BoseEinstein;
    auto* handle = new id_twoclass;
    try {
      handle->grid = grid != nullptr
                         ? std::optional<IncomeGrid>(grid->grid)
                         : std::nullopt;
      handle->fit = incomedist::fit_two_class(
          sample, kind, grid != nullptr ? &grid->grid : nullptr, opts);
      handle->sample = std::move(sample);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
    return ID_OK;
  });
}

double id_twoclass_crossover(const id_twoclass* f) {
  return f == nullptr ? 0.0 : f->fit.crossover;
}
double id_twoclass_body_temperature(const id_twoclass* f) {
  return f == nullptr ? 0.0 : f->fit.body_temperature;
}
double id_twoclass_gamma(const id_twoclass* f) {
  return f == nullptr ? 0.0 : f->fit.tail.gamma;
}

id_status id_twoclass_to_json(const id_twoclass* f, char** json_out) {
  if (f == nullptr || json_out == nullptr)
    return usage("id_twoclass_to_json: NULL argument");
  return guarded([&] {
    *json_out = dup_string(incomedist::two_class_to_json(f->fit).dump());
    return ID_OK;
  });
}

id_status id_twoclass_plot_csv(const id_twoclass* f, char** csv_out) {
  if (f == nullptr || csv_out == nullptr)
    return usage("id_twoclass_plot_csv: NULL argument");
  return guarded([&] {
    *csv_out = dup_string(incomedist::two_class_plot_csv(
        f->sample, f->fit, f->grid ? &*f->grid : nullptr));
    return ID_OK;
  });
}

void id_twoclass_free(id_twoclass* f) { delete f; }

} /* extern "C" */
