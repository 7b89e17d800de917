// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared-library C interface end to end: status codes,
// last-error reporting, handle lifecycles, and value round-trips.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "incomedist.h"

namespace {

const char* kGridJson =
    R"({"levels":[1.0,2.0,3.0],"degeneracies":[2,2,2]})";

id_grid* make_grid() {
  id_grid* g = nullptr;
  REQUIRE(id_grid_from_json(kGridJson, &g) == ID_OK);
  REQUIRE(g != nullptr);
  return g;
}

}  // namespace

TEST_CASE("version string is present") {
  REQUIRE(id_version() != nullptr);
  CHECK(std::strlen(id_version()) > 0);
}

TEST_CASE("null arguments yield usage errors with a message") {
  CHECK(id_grid_from_json(nullptr, nullptr) == ID_ERR_USAGE);
  CHECK(std::strlen(id_last_error()) > 0);
  id_grid* g = nullptr;
  CHECK(id_grid_from_json("not json", &g) == ID_ERR_USAGE);
  CHECK(g == nullptr);
}

TEST_CASE("grid build, inspection, and JSON round-trip") {
  id_grid* g = nullptr;
  long long degs[3] = {2, 2, 2};
  REQUIRE(id_grid_build(0.0, 3.0, 3, degs, &g) == ID_OK);
  CHECK(id_grid_size(g) == 3);
  double levels[3] = {0, 0, 0};
  REQUIRE(id_grid_levels(g, levels) == ID_OK);
  CHECK(levels[0] == doctest::Approx(0.5));
  CHECK(levels[2] == doctest::Approx(2.5));
  long long back[3] = {0, 0, 0};
  REQUIRE(id_grid_degeneracies(g, back) == ID_OK);
  CHECK(back[1] == 2);
  char* text = nullptr;
  REQUIRE(id_grid_to_json(g, &text) == ID_OK);
  id_grid* g2 = nullptr;
  REQUIRE(id_grid_from_json(text, &g2) == ID_OK);
  CHECK(id_grid_size(g2) == 3);
  id_string_free(text);
  id_grid_free(g);
  id_grid_free(g2);
}

TEST_CASE("multiplicity through the C surface") {
  id_grid* g = make_grid();
  double counts[3] = {2.0, 1.0, 0.0};
  double lo = 0.0;
  REQUIRE(id_log_omega(g, counts, 3, ID_REGIME_PERFECT, &lo) == ID_OK);
  // C(3,2) * C(2,1) * C(1,0) = 6.
  CHECK(lo == doctest::Approx(std::log(6.0)).epsilon(1e-12));

  char* exact = nullptr;
  double lo2 = 0.0;
  REQUIRE(id_omega_exact(g, counts, 3, ID_REGIME_MONOPOLISTIC, &lo2,
                         &exact) == ID_OK);
  // 3!/(2!1!) * 2^2 * 2^1 = 24.
  CHECK(std::string(exact) == "24");
  id_string_free(exact);

  char* oracle = nullptr;
  REQUIRE(id_oracle_count(g, counts, 3, ID_REGIME_MONOPOLISTIC, &oracle) ==
          ID_OK);
  CHECK(std::string(oracle) == "24");
  id_string_free(oracle);

  double st = 0.0;
  REQUIRE(id_log_omega_stirling(g, counts, 3, &st) == ID_OK);
  CHECK(std::isfinite(st));

  // Length mismatch is a usage error.
  CHECK(id_log_omega(g, counts, 2, ID_REGIME_PERFECT, &lo) == ID_ERR_USAGE);
  id_grid_free(g);
}

TEST_CASE("solve handle exposes multipliers and occupancies") {
  id_grid* g = make_grid();
  id_solution* s = nullptr;
  REQUIRE(id_solve(g, 10, 14.0, ID_REGIME_PERFECT, nullptr, &s) == ID_OK);
  CHECK(id_solution_beta(s) > 0.0);
  CHECK(id_solution_temperature(s) ==
        doctest::Approx(1.0 / id_solution_beta(s)));
  CHECK(id_solution_condensate_fraction(s) == 0.0);
  CHECK(id_solution_degenerate(s) == 0);
  double occ[3] = {0, 0, 0};
  REQUIRE(id_solution_occupancy(s, occ) == ID_OK);
  CHECK(occ[0] + occ[1] + occ[2] == doctest::Approx(10.0).epsilon(1e-9));
  char* text = nullptr;
  REQUIRE(id_solution_to_json(s, &text) == ID_OK);
  CHECK(std::string(text).find("\"beta\"") != std::string::npos);
  id_string_free(text);
  id_solution_free(s);

  // Infeasible economy maps to a domain error.
  id_solution* bad = nullptr;
  CHECK(id_solve(g, 10, 200.0, ID_REGIME_PERFECT, nullptr, &bad) ==
        ID_ERR_DOMAIN);
  CHECK(bad == nullptr);
  CHECK(std::strlen(id_last_error()) > 0);
  id_grid_free(g);
}

TEST_CASE("occupancy evaluation and the dilute-limit check") {
  id_grid* g = make_grid();
  double occ[3] = {0, 0, 0};
  REQUIRE(id_occupancy_at(g, 0.0, std::log(2.0), ID_REGIME_PERFECT, occ) ==
          ID_OK);
  // Levels 1,2,3 with g = 2: a_k = 1/(2^k - 1).
  CHECK(occ[0] == doctest::Approx(1.0));
  CHECK(occ[1] == doctest::Approx(1.0 / 3.0));
  CHECK(occ[2] == doctest::Approx(1.0 / 7.0));
  id_grid_free(g);
}

TEST_CASE("proposition-1 detection through the C surface") {
  id_grid* g = nullptr;
  long long degs[3] = {1, 1, 1};
  double levels[3] = {1.0, 2.0, 3.0};
  REQUIRE(id_grid_create(levels, degs, 3, 0.0, &g) == ID_OK);
  int found = -1, snapped = -1;
  double counts[3] = {0, 0, 0};
  REQUIRE(id_proposition1(g, ID_REGIME_PERFECT, 10, 20.0, &found, counts,
                          &snapped) == ID_OK);
  CHECK(found == 1);
  CHECK(snapped == 0);
  CHECK(counts[1] == doctest::Approx(10.0));
  REQUIRE(id_proposition1(g, ID_REGIME_MONOPOLISTIC, 10, 20.0, &found,
                          counts, &snapped) == ID_OK);
  CHECK(found == 0);
  id_grid_free(g);
}

TEST_CASE("ensemble histogram and allocation CSV are deterministic") {
  id_grid* g = nullptr;
  long long degs[3] = {1, 1, 1};
  double levels[3] = {0.0, 1.0, 2.0};
  REQUIRE(id_grid_create(levels, degs, 3, 1.0, &g) == ID_OK);
  char* h1 = nullptr;
  REQUIRE(id_ensemble_histogram_json(2, 2.0, 1.0, ID_MODE_ENUMERATE_LABELED,
                                     0, 0, g, &h1) == ID_OK);
  CHECK(std::string(h1).find("\"count\"") != std::string::npos);
  id_string_free(h1);

  char* c1 = nullptr;
  char* c2 = nullptr;
  REQUIRE(id_sample_allocations_csv(3, 6.0, 1.0, ID_MODE_SAMPLE_DISCRETE, 50,
                                    42, &c1) == ID_OK);
  REQUIRE(id_sample_allocations_csv(3, 6.0, 1.0, ID_MODE_SAMPLE_DISCRETE, 50,
                                    42, &c2) == ID_OK);
  CHECK(std::string(c1) == std::string(c2));
  id_string_free(c1);
  id_string_free(c2);

  // Sampling mode through the enumeration entry point is a usage error.
  char* c3 = nullptr;
  CHECK(id_enumerate_allocations_csv(3, 6.0, 1.0, ID_MODE_SAMPLE_DISCRETE,
                                     &c3) == ID_ERR_USAGE);
  id_grid_free(g);
}

TEST_CASE("pareto generation and tail fitting round-trip") {
  double* incomes = nullptr;
  long long n = 0;
  REQUIRE(id_pareto_generate(3000, 2, 7, 1.0, &incomes, &n) == ID_OK);
  REQUIRE(n == 3000);
  id_tailfit* fit = nullptr;
  REQUIRE(id_fit_power_law(incomes, n, &fit) == ID_OK);
  CHECK(id_tailfit_gamma(fit) > 0.5);
  CHECK(id_tailfit_xmin(fit) > 0.0);
  char* text = nullptr;
  REQUIRE(id_tailfit_to_json(fit, &text) == ID_OK);
  CHECK(std::string(text).find("\"gamma\"") != std::string::npos);
  id_string_free(text);
  id_tailfit_free(fit);
  id_doubles_free(incomes);

  CHECK(id_pareto_generate(3, 5, 7, 1.0, &incomes, &n) == ID_ERR_USAGE);
}

TEST_CASE("income CSV loading and the two-class fit handle") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "capi_incomes.csv";
  {
    std::ofstream out(path);
    out << "# synthetic\nincome\n";
    // Exponential body below 3, Pareto tail above.
    unsigned long long state = 88172645463325252ull;
    auto next01 = [&]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return (state >> 11) * 0x1.0p-53;
    };
    for (int i = 0; i < 2000; ++i) {
      double u = next01();
      if (u < 0.95) {
        double x = -std::log1p(-next01() * (1.0 - std::exp(-3.0)));
        out << x << "\n";
      } else {
        out << 3.0 * std::exp(next01() * 1.5) << "\n";
      }
    }
  }
  double* values = nullptr;
  long long n = 0;
  REQUIRE(id_load_income_csv(path.string().c_str(), &values, &n) == ID_OK);
  REQUIRE(n == 2000);

  double t = 0.0, ks = 0.0;
  int boundary = -1;
  REQUIRE(id_fit_boltzmann_body(values, n, 3.0, &t, &ks, &boundary) ==
          ID_OK);
  CHECK(t > 0.0);

  id_twoclass* fit = nullptr;
  REQUIRE(id_fit_two_class(values, n, ID_BODY_BOLTZMANN, nullptr, 5, 2,
                           &fit) == ID_OK);
  CHECK(id_twoclass_crossover(fit) > 0.0);
  CHECK(id_twoclass_body_temperature(fit) > 0.0);
  CHECK(id_twoclass_gamma(fit) > 0.0);
  char* text = nullptr;
  REQUIRE(id_twoclass_to_json(fit, &text) == ID_OK);
  CHECK(std::string(text).find("\"crossover\"") != std::string::npos);
  id_string_free(text);
  char* csv = nullptr;
  REQUIRE(id_twoclass_plot_csv(fit, &csv) == ID_OK);
  CHECK(std::string(csv).rfind("income,", 0) == 0);
  id_string_free(csv);
  id_twoclass_free(fit);
  id_doubles_free(values);
  fs::remove(path);

  CHECK(id_load_income_csv("/nonexistent/file.csv", &values, &n) ==
        ID_ERR_USAGE);
}
