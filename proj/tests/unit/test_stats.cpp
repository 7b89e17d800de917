// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "incomedist/stats.hpp"

using namespace incomedist;

TEST_CASE("regularized gamma P matches the exponential special case") {
  // P(1, x) = 1 - exp(-x)
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    CHECK(regularized_gamma_p(1.0, x) ==
          doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
  }
  CHECK(regularized_gamma_p(3.0, 0.0) == doctest::Approx(0.0));
  CHECK(regularized_gamma_q(3.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("chi-square survival function hits the 5% table values") {
  CHECK(chi_square_sf(3.841458820694124, 1) ==
        doctest::Approx(0.05).epsilon(1e-6));
  CHECK(chi_square_sf(16.918977604620448, 9) ==
        doctest::Approx(0.05).epsilon(1e-6));
  CHECK(chi_square_sf(0.0, 4) == doctest::Approx(1.0));
}

TEST_CASE("chi-square statistic is the usual Pearson sum") {
  std::vector<double> observed{12, 8, 10};
  std::vector<double> expected{10, 10, 10};
  CHECK(chi_square_statistic(observed, expected) ==
        doctest::Approx(0.4 + 0.4 + 0.0));
}

TEST_CASE("KS distance against the true CDF of a tiny sample") {
  // Sorted sample {0.25, 0.75} against U(0,1):
  // steps at 0.25 (0 -> 0.5) and 0.75 (0.5 -> 1), max gap 0.25.
  std::vector<double> sample{0.25, 0.75};
  const double d = ks_distance(sample, [](double x) { return x; });
  CHECK(d == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("two-sample KS separates disjoint samples completely") {
  std::vector<double> a{1.0, 2.0, 3.0};
  std::vector<double> b{10.0, 11.0};
  CHECK(ks_two_sample(a, b) == doctest::Approx(1.0));
  CHECK(ks_two_sample_critical_01(100, 100) ==
        doctest::Approx(1.628 * std::sqrt(2.0 / 100.0)).epsilon(1e-9));
}
