// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <vector>

#include "incomedist/errors.hpp"
#include "incomedist/grid.hpp"

using namespace incomedist;

TEST_CASE("uniform grid centers levels inside equal bins") {
  IncomeGrid g = build_grid(0.0, 10.0, 5, {1, 1, 1, 1, 1});
  REQUIRE(g.size() == 5);
  CHECK(g.levels()[0] == doctest::Approx(1.0));
  CHECK(g.levels()[4] == doctest::Approx(9.0));
  CHECK(g.bin_width() == doctest::Approx(2.0));
  CHECK(g.left_edge() == doctest::Approx(0.0));
  CHECK(g.right_edge() == doctest::Approx(10.0));
}

TEST_CASE("grid construction rejects malformed input") {
  CHECK_THROWS_AS(IncomeGrid({}, {}), InputError);
  CHECK_THROWS_AS(IncomeGrid({1.0, 2.0}, {1}), InputError);
  CHECK_THROWS_AS(IncomeGrid({2.0, 1.0}, {1, 1}), InputError);
  CHECK_THROWS_AS(IncomeGrid({1.0, 1.0}, {1, 1}), InputError);
  CHECK_THROWS_AS(IncomeGrid({-1.0, 1.0}, {1, 1}), InputError);
  CHECK_THROWS_AS(IncomeGrid({1.0, 2.0}, {1, 0}), InputError);
  CHECK_THROWS_AS(build_grid(5.0, 5.0, 2, {1, 1}), InputError);
}

TEST_CASE("equally spaced levels infer their bin width") {
  IncomeGrid g({1.0, 2.0, 3.0}, {1, 2, 3});
  CHECK(g.has_bins());
  CHECK(g.bin_width() == doctest::Approx(1.0));
  IncomeGrid irregular({1.0, 2.0, 4.0}, {1, 1, 1});
  CHECK_FALSE(irregular.has_bins());
  CHECK_THROWS_AS(irregular.left_edge(), DomainError);
}

TEST_CASE("binning respects half-open bins with a closed last edge") {
  IncomeGrid g = build_grid(0.0, 10.0, 5, {1, 1, 1, 1, 1});
  Allocation alloc{{0.0, 1.9, 2.0, 9.99, 10.0}};
  Occupancy occ = bin_allocation(alloc, g);
  // 0.0 and 1.9 fall in bin 0; the shared edge 2.0 opens bin 1;
  // 9.99 and the closed right edge 10.0 land in the last bin.
  CHECK((occ.counts == std::vector<double>{2, 1, 0, 0, 2}));
  CHECK_THROWS_AS(bin_allocation(Allocation{{10.1}}, g), DomainError);
  CHECK_THROWS_AS(bin_allocation(Allocation{{-0.1}}, g), DomainError);
}

TEST_CASE("occupancy totals, income, and integrality") {
  IncomeGrid g({1.0, 2.0, 3.0}, {1, 1, 1});
  Occupancy occ{{2.0, 0.0, 1.0}};
  CHECK(occ.total() == doctest::Approx(3.0));
  CHECK(occ.income(g) == doctest::Approx(2.0 + 3.0));
  CHECK(occ.is_integral());
  CHECK((occ.as_integers() == std::vector<long long>{2, 0, 1}));
  Occupancy frac{{1.5, 0.0, 0.0}};
  CHECK_FALSE(frac.is_integral());
  CHECK_THROWS_AS(frac.as_integers(), InputError);
}

TEST_CASE("allocation validation enforces count and conservation") {
  EconomyParams params{3, 6.0, 1.0};
  validate_allocation(Allocation{{1.0, 2.0, 3.0}}, params);
  CHECK_THROWS_AS(validate_allocation(Allocation{{1.0, 2.0}}, params),
                  InputError);
  CHECK_THROWS_AS(validate_allocation(Allocation{{1.0, 2.0, 4.0}}, params),
                  InputError);
  CHECK_THROWS_AS(validate_allocation(Allocation{{-1.0, 4.0, 3.0}}, params),
                  InputError);
}

TEST_CASE("occupancy feasibility reports both residuals") {
  IncomeGrid g({1.0, 2.0, 3.0}, {1, 1, 1});
  EconomyParams params{3, 6.0, 1.0};
  auto rep = validate_occupancy(Occupancy{{1.0, 1.0, 1.0}}, params, g);
  CHECK(rep.feasible());
  CHECK(rep.count_residual == doctest::Approx(0.0));
  CHECK(rep.income_residual == doctest::Approx(0.0));
  auto bad = validate_occupancy(Occupancy{{2.0, 1.0, 1.0}}, params, g);
  CHECK_FALSE(bad.count_ok);
  CHECK_FALSE(bad.income_ok);
  CHECK(bad.count_residual == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("economy parameter validation") {
  CHECK_THROWS_AS((EconomyParams{0, 1.0, 1.0}.validate()), InputError);
  CHECK_THROWS_AS((EconomyParams{3, -1.0, 1.0}.validate()), InputError);
  CHECK_THROWS_AS((EconomyParams{3, 6.0, 0.0}.validate()), InputError);
}
