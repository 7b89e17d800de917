// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdint>
#include <json.hpp>
#include <map>
#include <vector>

#include "incomedist/errors.hpp"
#include "incomedist/grid.hpp"
#include "incomedist/json_io.hpp"
#include "incomedist/maxent.hpp"
#include "incomedist/pareto.hpp"

using namespace incomedist;
using nlohmann::json;

TEST_CASE("grid JSON round-trips including the bin width") {
  IncomeGrid g({1.0, 2.5, 7.0}, {1, 2, 3}, 0.5);
  json j = grid_to_json(g);
  IncomeGrid back = grid_from_json(j);
  CHECK(back.levels() == g.levels());
  CHECK(back.degeneracies() == g.degeneracies());
  CHECK(back.bin_width() == g.bin_width());

  IncomeGrid inferred = grid_from_json_text(
      R"({"levels":[1.0,2.0,3.0],"degeneracies":[2,2,2]})");
  CHECK(inferred.bin_width() == doctest::Approx(1.0));
}

TEST_CASE("grid JSON rejects malformed documents") {
  CHECK_THROWS_AS(grid_from_json_text("not json"), InputError);
  CHECK_THROWS_AS(grid_from_json_text(R"({"levels":[1.0]})"), InputError);
  CHECK_THROWS_AS(
      grid_from_json_text(
          R"({"levels":[1.0],"degeneracies":[1.5]})"),
      InputError);
  CHECK_THROWS_AS(
      grid_from_json_text(R"({"levels":"x","degeneracies":[1]})"),
      InputError);
}

TEST_CASE("occupancy JSON round-trips") {
  Occupancy occ{{1.0, 0.0, 2.5}};
  Occupancy back = occupancy_from_json(occupancy_to_json(occ));
  CHECK(back.counts == occ.counts);
  CHECK_THROWS_AS(occupancy_from_json(json::object()), InputError);
}

TEST_CASE("solution JSON carries multipliers, occupancy, and residuals") {
  IncomeGrid g({1.0, 2.0, 3.0}, {2, 2, 2});
  auto sol = solve(EconomyParams{10, 14.0, 1.0}, g, Regime::Perfect);
  json j = solution_to_json(sol, g);
  CHECK(j.at("regime") == "perfect");
  CHECK(j.at("alpha").get<double>() == sol.alpha);
  CHECK(j.at("beta").get<double>() == sol.beta);
  CHECK(j.at("temperature").get<double>() == sol.temperature);
  CHECK(j.at("levels").size() == 3);
  CHECK(j.at("occupancy").at("counts").size() == 3);
  CHECK(j.at("condensate_fraction").get<double>() == 0.0);
  CHECK(j.at("degenerate").get<bool>() == false);
  CHECK(j.at("count_residual").get<double>() <= 1e-8);
  CHECK_FALSE(j.contains("note"));  // only present when set

  // Lossless round-trip of the multipliers through text.
  json reparsed = json::parse(j.dump());
  CHECK(reparsed.at("beta").get<double>() == sol.beta);
}

TEST_CASE("histogram JSON orders rows by count, ties lexicographic") {
  std::map<MacrostateKey, std::uint64_t> hist;
  hist[{0, 2, 0}] = 1;
  hist[{1, 0, 1}] = 2;
  hist[{0, 1, 1}] = 2;
  json j = histogram_to_json(hist);
  REQUIRE(j.size() == 3);
  CHECK(j[0].at("count") == 2);
  CHECK((j[0].at("occupancy").get<std::vector<long long>>() ==
         std::vector<long long>{0, 1, 1}));
  CHECK(j[1].at("count") == 2);
  CHECK((j[1].at("occupancy").get<std::vector<long long>>() ==
         std::vector<long long>{1, 0, 1}));
  CHECK(j[2].at("count") == 1);
}

TEST_CASE("tail fit JSON exposes the documented keys") {
  TailFit f{1.5, 2.5, 3.0, 0.02, 500};
  json j = tail_fit_to_json(f);
  CHECK(j.at("gamma").get<double>() == 1.5);
  CHECK(j.at("density_exponent").get<double>() == 2.5);
  CHECK(j.at("xmin").get<double>() == 3.0);
  CHECK(j.at("ks").get<double>() == 0.02);
  CHECK(j.at("n_tail").get<long long>() == 500);
}
