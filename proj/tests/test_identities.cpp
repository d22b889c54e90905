#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sphericoh/grids.hpp"
#include "sphericoh/identities.hpp"

using namespace sphericoh::identities;

TEST_CASE("bernoulli numbers, B_1 = +1/2 convention") {
  CHECK(bernoulli(0) == mpq_class(1));
  CHECK(bernoulli(1) == mpq_class(1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(3) == mpq_class(0));
  CHECK(bernoulli(4) == mpq_class(-1, 30));
  CHECK(bernoulli(8) == mpq_class(-1, 30));
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK_THROWS(bernoulli(-1));
}

TEST_CASE("zeta at even arguments from the Bernoulli relation") {
  const double pi = std::numbers::pi;
  CHECK(zeta_even(2) == doctest::Approx(pi * pi / 6.0).epsilon(1e-14));
  CHECK(zeta_even(4) == doctest::Approx(std::pow(pi, 4) / 90.0).epsilon(1e-14));
  CHECK(zeta_even(6) == doctest::Approx(std::pow(pi, 6) / 945.0).epsilon(1e-14));
  CHECK(zeta_even(12) == doctest::Approx(1.000246086553308).epsilon(1e-14));
  CHECK_THROWS(zeta_even(3));
  // round trip: B_j = (-1)^(j/2+1) 2 j! zeta(j) / (2 pi)^j
  for (int j = 2; j <= 12; j += 2) {
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) fact *= i;
    double sign = (j / 2 % 2 == 1) ? 1.0 : -1.0;
    double bj = sign * 2.0 * fact * zeta_even(j) / std::pow(2.0 * std::numbers::pi, j);
    CHECK(bj == doctest::Approx(bernoulli(j).get_d()).epsilon(1e-12));
  }
}

TEST_CASE("closed-form Legendre sums match the direct sums") {
  for (int l = 2; l <= 40; l += 2) {
    int base = ((l + 1) * (l + 1) + 19) / 10;
    for (int m : {base, 3 * base}) {
      double closed = legendre_sum_closed_form(l, m).total();
      double direct = direct_legendre_sum(l, m);
      CHECK(closed ==
            doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("degenerate and odd degrees") {
  CHECK(legendre_sum_closed_form(0, 17).total() == 17.0);
  CHECK_THROWS(legendre_sum_closed_form(3, 20));
  CHECK_THROWS(legendre_sum_closed_form(2, 1));
  for (int l = 1; l <= 19; l += 2)
    CHECK(std::abs(direct_legendre_sum(l, 25)) < 1e-10);
}

TEST_CASE("residual band") {
  for (int l = 4; l <= 30; l += 2) {
    int m = ((l + 1) * (l + 1) + 19) / 10;
    auto ok = residual_bound_check(l, m);
    REQUIRE(ok.has_value());
    CHECK(*ok);
  }
  // too few samples for the band to be claimed
  CHECK(!residual_bound_check(20, 10).has_value());
  CHECK_THROWS(residual_bound_check(5, 100));
}

TEST_CASE("even-degree sum chain is monotone") {
  CHECK(monotone_sum_check(20, sphericoh::grids::min_samples(20)));
  CHECK(monotone_sum_check(10, 40));
}

TEST_CASE("squared-3j monotonicity at zero orders") {
  for (int l1 = 0; l1 <= 8; ++l1)
    for (int l2 = l1 + 1; l2 <= 9; ++l2)
      for (int l3 = l2 - l1; l3 <= l1 + l2; ++l3)
        CHECK(threej_monotonicity_check(l1, l2, l3));
  CHECK_THROWS(threej_monotonicity_check(3, 3, 2));
}

TEST_CASE("odd/even splits of the double-3j sum") {
  auto [e1, o1] = odd_even_split_check(1, 2, 1, 1);  // tau = 1
  CHECK(e1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(o1 == doctest::Approx(0.5).epsilon(1e-12));
  auto [e2, o2] = odd_even_split_check(2, 3, 1, 2);  // k != +-n
  CHECK(std::abs(e2) < 1e-12);
  CHECK(std::abs(o2) < 1e-12);
  auto [e3, o3] = odd_even_split_check(2, 4, 2, -2);  // k = -n: signed halves
  CHECK(e3 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(o3 == doctest::Approx(-0.5).epsilon(1e-12));
  auto [e4, o4] = odd_even_split_check(2, 3, 1, -1);  // k = -n, odd l1+l2
  CHECK(e4 == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(o4 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("weighted 3j sums are exactly 2 + 2(l1+2)(l1+1)") {
  CHECK(weighted_threej_sum(0) == mpq_class(6));
  CHECK(weighted_threej_sum(1) == mpq_class(14));
  CHECK(weighted_threej_sum(2) == mpq_class(26));
  for (int l1 = 3; l1 <= 21; ++l1)
    CHECK(weighted_threej_sum(l1) == mpq_class(2 + 2 * (l1 + 2) * (l1 + 1)));
}

TEST_CASE("sampled norm estimates") {
  auto e0 = l2_norm_estimate(0, 0, 0, 33);
  CHECK(e0.actual == doctest::Approx(33.0).epsilon(1e-14));
  CHECK(e0.error < 1e-12);
  // pole half-weights: 1 for k=n=0, 1/2 for k=n or k=-n, 0 otherwise
  CHECK(l2_norm_estimate(3, 0, 0, 100).estimate ==
        doctest::Approx(99.0 / 7.0 + 1.0));
  CHECK(l2_norm_estimate(3, 2, 2, 100).estimate ==
        doctest::Approx(99.0 / 7.0 + 0.5));
  CHECK(l2_norm_estimate(3, 2, -2, 100).estimate ==
        doctest::Approx(99.0 / 7.0 + 0.5));
  CHECK(l2_norm_estimate(3, 2, 1, 100).estimate == doctest::Approx(99.0 / 7.0));
  // the discretization error decays as the grid refines
  for (int l = 1; l <= 10; ++l) {
    for (int k = -l; k <= l; k += std::max(1, l)) {
      for (int n = -l; n <= l; n += std::max(1, l)) {
        double prev = 1e9;
        for (int m : {50, 100, 200, 400}) {
          double err = l2_norm_estimate(l, k, n, m).error;
          // decay claim only above the rounding noise floor
          CHECK((err < prev || err < 1e-11));
          prev = err;
        }
      }
    }
  }
}
