/* SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the income-distribution library. All model state lives
 * behind opaque handles; every fallible call returns an id_status and leaves
 * a human-readable message in id_last_error() (thread-local) on failure.
 * Strings and arrays returned through out-parameters are owned by the caller
 * and released with id_string_free / id_doubles_free; handles have their own
 * *_free functions. Passing NULL where a handle or out-pointer is required
 * yields ID_ERR_USAGE.
 */
#ifndef INCOMEDIST_H
#define INCOMEDIST_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum id_status {
  ID_OK = 0,
  ID_ERR_DOMAIN = 1,   /* infeasible input, guard refusal, no convergence */
  ID_ERR_USAGE = 2,    /* malformed arguments or schemas */
  ID_ERR_INTERNAL = 3, /* unexpected failure; report a bug */
} id_status;

typedef enum id_regime {
  ID_REGIME_PERFECT = 0,
  ID_REGIME_MONOPOLISTIC = 1,
} id_regime;

typedef enum id_ensemble_mode {
  ID_MODE_ENUMERATE_LABELED = 0,
  ID_MODE_ENUMERATE_UNLABELED = 1,
  ID_MODE_SAMPLE_CONTINUOUS = 2,
  ID_MODE_SAMPLE_DISCRETE = 3,
} id_ensemble_mode;

typedef enum id_body_kind {
  ID_BODY_BOLTZMANN = 0,
  ID_BODY_BOSE_EINSTEIN = 1,
} id_body_kind;

const char* id_version(void);
/* Message describing the most recent failure on this thread; empty string
 * when the last call succeeded. */
const char* id_last_error(void);
void id_string_free(char* s);
void id_doubles_free(double* p);

/* ---- income grids ---- */

typedef struct id_grid id_grid;

/* Uniform bins on [eps_min, eps_max]; levels are bin centers. */
id_status id_grid_build(double eps_min, double eps_max, int n_levels,
                        const long long* degeneracies, id_grid** out);
/* Explicit levels; bin_width <= 0 means unknown (inferred from spacing when
 * the grid has at least two equally spaced levels). */
id_status id_grid_create(const double* levels, const long long* degeneracies,
                         int n_levels, double bin_width, id_grid** out);
id_status id_grid_from_json(const char* json_text, id_grid** out);
id_status id_grid_to_json(const id_grid* grid, char** json_out);
int id_grid_size(const id_grid* grid);
/* Both arrays must hold id_grid_size entries. */
id_status id_grid_levels(const id_grid* grid, double* levels_out);
id_status id_grid_degeneracies(const id_grid* grid, long long* deg_out);
void id_grid_free(id_grid* grid);

/* Bins incomes into occupancy counts (counts_out: one per level). */
id_status id_bin_allocation(const id_grid* grid, const double* incomes,
                            long long n_incomes, double* counts_out);
id_status id_validate_occupancy(const id_grid* grid, const double* counts,
                                int n_counts, long long n_consumers,
                                double total_income, double tol,
                                int* count_ok, int* income_ok,
                                double* count_residual,
                                double* income_residual);

/* ---- microstate counting ---- */

id_status id_log_omega(const id_grid* grid, const double* counts, int n_counts,
                       id_regime regime, double* out);
id_status id_log_omega_stirling(const id_grid* grid, const double* counts,
                                int n_counts, double* out);
/* exact_out receives the decimal string of the exact count when non-NULL. */
id_status id_omega_exact(const id_grid* grid, const double* counts,
                         int n_counts, id_regime regime, double* log_out,
                         char** exact_out);
/* Enumeration oracle (N <= 12, sum g_k <= 12); decimal string out. */
id_status id_oracle_count(const id_grid* grid, const double* counts,
                          int n_counts, id_regime regime, char** exact_out);

/* ---- equilibrium solver ---- */

typedef struct id_solution id_solution;

typedef struct id_solve_options {
  double constraint_tol; /* <= 0 for default 1e-8 */
  double inner_tol;      /* <= 0 for default 1e-12 */
  int max_outer;         /* <= 0 for default 200 */
  int max_inner;         /* <= 0 for default 200 */
} id_solve_options;

id_status id_solve(const id_grid* grid, long long n_consumers,
                   double total_income, id_regime regime,
                   const id_solve_options* options /* nullable */,
                   id_solution** out);
double id_solution_alpha(const id_solution* s);
double id_solution_beta(const id_solution* s);
double id_solution_mu(const id_solution* s);
double id_solution_temperature(const id_solution* s);
double id_solution_condensate_fraction(const id_solution* s);
int id_solution_degenerate(const id_solution* s);
int id_solution_levels(const id_solution* s);
id_status id_solution_occupancy(const id_solution* s, double* counts_out);
id_status id_solution_to_json(const id_solution* s, char** json_out);
void id_solution_free(id_solution* s);

id_status id_occupancy_at(const id_grid* grid, double alpha, double beta,
                          id_regime regime, double* counts_out);
/* Forced single-level occupancy when the perfect regime has every g_k = 1.
 * found=0 leaves the buffers untouched. */
id_status id_proposition1(const id_grid* grid, id_regime regime,
                          long long n_consumers, double total_income,
                          int* found, double* counts_out, int* snapped);
id_status id_boltzmann_limit_check(const id_solution* s, const id_grid* grid,
                                   double* max_rel_deviation);

/* ---- uniform ensemble ---- */

/* Histogram of binned macrostates as JSON (entries sorted by count). Sampling
 * modes use sample_count draws from seed; enumeration modes ignore both. */
id_status id_ensemble_histogram_json(long long n_consumers,
                                     double total_income, double quantum,
                                     id_ensemble_mode mode,
                                     unsigned long long sample_count,
                                     unsigned long long seed,
                                     const id_grid* grid, char** json_out);
/* Allocations as CSV, one row per allocation. */
id_status id_sample_allocations_csv(long long n_consumers, double total_income,
                                    double quantum, id_ensemble_mode mode,
                                    unsigned long long sample_count,
                                    unsigned long long seed, char** csv_out);
id_status id_enumerate_allocations_csv(long long n_consumers,
                                       double total_income, double quantum,
                                       id_ensemble_mode mode, char** csv_out);

/* ---- power-law tail ---- */

/* incomes_out receives n_nodes incomes (scale * degree). */
id_status id_pareto_generate(long long n_nodes, long long m,
                             unsigned long long seed, double scale,
                             double** incomes_out, long long* n_out);

typedef struct id_tailfit id_tailfit;

id_status id_fit_power_law(const double* values, long long n,
                           id_tailfit** out);
id_status id_fit_power_law_at(const double* values, long long n, double xmin,
                              id_tailfit** out);
double id_tailfit_gamma(const id_tailfit* f);
double id_tailfit_density_exponent(const id_tailfit* f);
double id_tailfit_xmin(const id_tailfit* f);
double id_tailfit_ks(const id_tailfit* f);
long long id_tailfit_n_tail(const id_tailfit* f);
id_status id_tailfit_to_json(const id_tailfit* f, char** json_out);
void id_tailfit_free(id_tailfit* f);

/* ---- empirical two-class fit ---- */

id_status id_load_income_csv(const char* path, double** values_out,
                             long long* n_out);
id_status id_fit_boltzmann_body(const double* values, long long n,
                                double upper_cut, double* temperature_out,
                                double* ks_out, int* boundary_out);
id_status id_fit_bose_einstein_body(const double* values, long long n,
                                    const id_grid* grid, double upper_cut,
                                    double* scale_out, double* mu_out,
                                    double* temperature_out, double* ks_out,
                                    int* boundary_out);

typedef struct id_twoclass id_twoclass;

/* grid may be NULL for the Boltzmann body; threads <= 0 reads
 * MAXENT_INCOME_THREADS. seed drives the bootstrap calibration bands. */
id_status id_fit_two_class(const double* values, long long n,
                           id_body_kind body_kind, const id_grid* grid,
                           unsigned long long seed, int threads,
                           id_twoclass** out);
double id_twoclass_crossover(const id_twoclass* f);
double id_twoclass_body_temperature(const id_twoclass* f);
double id_twoclass_gamma(const id_twoclass* f);
id_status id_twoclass_to_json(const id_twoclass* f, char** json_out);
/* "income,empirical_ccdf,body_ccdf,tail_ccdf" rows for plotting. */
id_status id_twoclass_plot_csv(const id_twoclass* f, char** csv_out);
void id_twoclass_free(id_twoclass* f);

#ifdef __cplusplus
}
#endif

#endif /* INCOMEDIST_H */
