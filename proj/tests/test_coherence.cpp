#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sphericoh/coherence.hpp"
#include "sphericoh/specfun.hpp"

using namespace sphericoh;
using namespace sphericoh::coherence;

TEST_CASE("sensing matrix shapes and entries") {
  Grid g = grids::equispaced_grid_random(6, 3);
  auto sm = build_sensing_matrix(g, 3, BasisKind::wigner);
  CHECK(sm.entries.rows() == 6);
  CHECK(sm.entries.cols() == 35);
  // spot-check one entry against the scalar definition
  const auto& mode = sm.modes[20];
  std::size_t p = 4;
  auto expected = specfun::wigner_D(mode.l, mode.k, mode.n, g.theta[p], g.phi[p],
                                    g.chi[p]);
  CHECK(std::abs(sm.entries(Eigen::Index(p), 20) - expected) < 1e-13);

  auto sh = build_sensing_matrix(g, 3, BasisKind::spherical);
  CHECK(sh.entries.cols() == 9);
  const auto& ym = sh.modes[5];
  auto yexp = specfun::spherical_harmonic(ym.l, ym.k, g.theta[p], g.phi[p]);
  CHECK(std::abs(sh.entries(Eigen::Index(p), 5) - yexp) < 1e-13);
}

TEST_CASE("mutual coherence agrees with a brute-force scan") {
  Grid g = grids::equispaced_grid_random(8, 9);
  auto sm = build_sensing_matrix(g, 3, BasisKind::wigner);
  auto rep = mutual_coherence(sm);
  double best = 0.0;
  for (Eigen::Index r = 0; r < sm.entries.cols(); ++r)
    for (Eigen::Index q = r + 1; q < sm.entries.cols(); ++q) {
      double v = std::abs(sm.entries.col(r).dot(sm.entries.col(q))) /
                 (sm.entries.col(r).norm() * sm.entries.col(q).norm());
      best = std::max(best, v);
    }
  CHECK(rep.mu == doctest::Approx(best).epsilon(1e-13));
  CHECK(rep.mu <= 1.0 + 1e-12);
  CHECK(rep.columns == 35);
  CHECK(rep.samples == 8);
}

TEST_CASE("elevation lower bound pinned values") {
  CHECK(elevation_lower_bound(3, 4, false) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(elevation_lower_bound(3, 4, true) ==
        doctest::Approx(0.44721359549995793).epsilon(1e-14));
  CHECK_THROWS(elevation_lower_bound(2, 4, false));
}

TEST_CASE("welch bound") {
  CHECK(welch_bound(50, 100) == doctest::Approx(std::sqrt(50.0 / (50.0 * 99.0))));
  CHECK(welch_bound(50, 100) == doctest::Approx(0.100504).epsilon(1e-5));
  CHECK(welch_bound(100, 100) == 0.0);
  CHECK(welch_bound(200, 100) == 0.0);  // overcomplete in samples
  CHECK(welch_bound(5, 1) == 0.0);
}

TEST_CASE("coherence is never below the elevation-only bound") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Grid g = grids::equispaced_grid_random(16, seed);
    auto rep = mutual_coherence(build_sensing_matrix(g, 5, BasisKind::wigner));
    CHECK(rep.mu >= elevation_lower_bound(5, 16, true) - 1e-12);
  }
}

TEST_CASE("equal-order maximum matches the Legendre pair when sampled enough") {
  // at the minimal count the Legendre pair wins only up to B = 7 ...
  for (int B : {3, 5, 7}) {
    int m = grids::min_samples(B);
    Grid g = grids::equispaced_grid(m);
    auto best = max_equal_order_product(g, B);
    CHECK(best.l1 == B - 3);
    CHECK(best.l2 == B - 1);
    CHECK(best.k == 0);
    CHECK(best.n == 0);
    CHECK(best.value ==
          doctest::Approx(elevation_lower_bound(B, m, false)).epsilon(1e-12));
  }
  // ... beyond that a residual-dominated low-degree pair overtakes it until
  // the grid refines: B = 8 flips at m = 12, one above the minimal 11
  {
    auto at11 = max_equal_order_product(grids::equispaced_grid(11), 8);
    CHECK(at11.l1 == 3);
    CHECK(at11.l2 == 7);
    auto at12 = max_equal_order_product(grids::equispaced_grid(12), 8);
    CHECK(at12.l1 == 5);
    CHECK(at12.l2 == 7);
    CHECK(at12.k == 0);
    CHECK(at12.n == 0);
  }
}

TEST_CASE("product expansion equals the direct sum") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    Grid g = grids::equispaced_grid_random(5 + int(rng() % 12), rng());
    int l1 = int(rng() % 6), l2 = int(rng() % 6);
    grids::ModeIndex a{l1, l1 ? int(rng() % (2 * l1 + 1)) - l1 : 0,
                       l1 ? int(rng() % (2 * l1 + 1)) - l1 : 0};
    grids::ModeIndex b{l2, l2 ? int(rng() % (2 * l2 + 1)) - l2 : 0,
                       l2 ? int(rng() % (2 * l2 + 1)) - l2 : 0};
    auto direct = direct_column_product(a, b, g);
    auto expanded = product_expansion(a, b, g);
    double scale = std::max(1.0, std::abs(direct));
    CHECK(std::abs(direct - expanded) / scale < 1e-10);
  }
}

TEST_CASE("degenerate matrices are rejected") {
  Grid g = grids::equispaced_grid(4);
  auto sm = build_sensing_matrix(g, 3, BasisKind::wigner);
  sm.entries.col(2).setZero();
  sm.column_norms = sm.entries.colwise().norm();
  CHECK_THROWS(mutual_coherence(sm));
}

TEST_CASE("report serialization") {
  Grid g = grids::equispaced_grid_random(10, 4);
  auto rep = mutual_coherence(build_sensing_matrix(g, 4, BasisKind::spherical));
  std::stringstream csv, json;
  write_report_csv(csv, rep);
  write_report_json(json, rep);
  CHECK(csv.str().rfind("B,m,N,kind,mu,lower_bound,welch", 0) == 0);
  CHECK(json.str().find("\"mu\"") != std::string::npos);
  CHECK(json.str().find("\"sh\"") != std::string::npos);
}
