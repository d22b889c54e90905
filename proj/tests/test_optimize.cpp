#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sphericoh/coherence.hpp"
#include "sphericoh/optimize.hpp"

using namespace sphericoh;
using namespace sphericoh::optimize;

namespace {

// Random grid with elevations kept away from the poles so the theta
// gradient is testable.
Grid interior_grid(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ut(0.3, std::numbers::pi - 0.3);
  std::uniform_real_distribution<double> up(0.0, 2.0 * std::numbers::pi);
  Grid g;
  for (int i = 0; i < m; ++i) {
    double th = ut(rng);
    g.theta.push_back(th);
    g.cos_theta.push_back(std::cos(th));
    g.phi.push_back(up(rng));
    g.chi.push_back(up(rng));
  }
  return g;
}

double objective_at(Grid g, int B, int p, BasisKind kind, AngleVar wrt,
                    std::size_t s, double delta) {
  if (wrt == AngleVar::phi) {
    g.phi[s] += delta;
  } else if (wrt == AngleVar::chi) {
    g.chi[s] += delta;
  } else {
    g.theta[s] += delta;
    g.cos_theta[s] = std::cos(g.theta[s]);
  }
  return pnorm_objective(g, B, p, kind);
}

void check_gradient(const Grid& g, int B, int p, BasisKind kind, AngleVar wrt) {
  Eigen::VectorXd an = gradient(g, B, p, wrt, kind);
  const double h = 1e-6;
  double worst_abs = 0.0, scale = 0.0;
  for (std::size_t s = 0; s < g.size(); ++s) {
    double fd = (objective_at(g, B, p, kind, wrt, s, h) -
                 objective_at(g, B, p, kind, wrt, s, -h)) /
                (2.0 * h);
    worst_abs = std::max(worst_abs, std::abs(an(Eigen::Index(s)) - fd));
    scale = std::max(scale, std::abs(fd));
  }
  CHECK(worst_abs <= 1e-5 * std::max(scale, 1e-6));
}

}  // namespace

TEST_CASE("pnorm objective basics") {
  // single column: no pairs, objective zero, gradient zero
  Grid g = grids::equispaced_grid_random(5, 1);
  CHECK(pnorm_objective(g, 1, 8, BasisKind::wigner) == 0.0);
  Eigen::VectorXd z = gradient(g, 1, 8, AngleVar::phi, BasisKind::wigner);
  CHECK(z.norm() == 0.0);
  CHECK_THROWS(pnorm_objective(g, 3, 7, BasisKind::wigner));  // odd p
}

TEST_CASE("pnorm objective brackets the coherence and decreases in p") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    Grid g = grids::equispaced_grid_random(10, rng());
    auto sm = coherence::build_sensing_matrix(g, 4, BasisKind::wigner);
    auto rep = coherence::mutual_coherence(sm);
    std::size_t n = rep.columns;
    double pairs = 0.5 * double(n) * double(n - 1);
    double prev = 1e300;
    for (int p : {8, 16, 32, 64}) {
      double obj = pnorm_objective(g, 4, p, BasisKind::wigner);
      CHECK(obj >= rep.mu - 1e-12);
      CHECK(obj <= std::pow(pairs, 1.0 / p) * rep.mu + 1e-12);
      CHECK(obj <= prev + 1e-12);
      prev = obj;
    }
  }
}

TEST_CASE("analytic gradients match finite differences") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    int B = 2 + int(rng() % 3);
    Grid g = interior_grid(5 + int(rng() % 6), rng);
    check_gradient(g, B, 8, BasisKind::wigner, AngleVar::phi);
    check_gradient(g, B, 8, BasisKind::wigner, AngleVar::chi);
    check_gradient(g, B, 8, BasisKind::wigner, AngleVar::theta);
    check_gradient(g, B, 8, BasisKind::spherical, AngleVar::phi);
    check_gradient(g, B, 8, BasisKind::spherical, AngleVar::theta);
  }
}

TEST_CASE("chi gradient of a spherical matrix vanishes") {
  std::mt19937_64 rng(21);
  Grid g = interior_grid(8, rng);
  CHECK(gradient(g, 4, 8, AngleVar::chi, BasisKind::spherical).norm() == 0.0);
}

TEST_CASE("theta gradient refuses pole samples") {
  Grid g = grids::equispaced_grid_random(8, 2);  // includes both poles
  CHECK_THROWS_AS((void)gradient(g, 3, 8, AngleVar::theta, BasisKind::wigner),
                  std::domain_error);
}

TEST_CASE("optimizer steps") {
  Eigen::VectorXd params(3), zero = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd g(3);
  g << 0.2, -0.4, 1.0;

  for (Method m : {Method::sgd, Method::adam, Method::adagrad, Method::adadelta}) {
    params << 1.0, 2.0, 3.0;
    StepState st(3);
    step(m, st, params, zero, 0.5);
    CHECK(params(0) == 1.0);
    CHECK(params(1) == 2.0);
    CHECK(params(2) == 3.0);
  }

  params << 0.1, 6.2, 3.0;
  StepState st(3);
  step(Method::sgd, st, params, g, 0.5);
  CHECK(params(0) == doctest::Approx(0.0));
  CHECK(params(1) == doctest::Approx(std::fmod(6.2 + 0.2, 2 * std::numbers::pi)));
  CHECK(params(2) == doctest::Approx(2.5));
  CHECK(params.minCoeff() >= 0.0);
  CHECK(params.maxCoeff() < 2.0 * std::numbers::pi);

  // bias-corrected first adam step moves by about -eta * sign(g)
  params << 1.0, 2.0, 3.0;
  StepState sa(3);
  step(Method::adam, sa, params, g, 0.5);
  CHECK(params(0) == doctest::Approx(1.0 - 0.5).epsilon(1e-6));
  CHECK(params(1) == doctest::Approx(2.0 + 0.5).epsilon(1e-6));
  CHECK(params(2) == doctest::Approx(3.0 - 0.5).epsilon(1e-6));
}

TEST_CASE("config validation") {
  OptimizerConfig c;
  CHECK_NOTHROW(c.validate());
  c.p = 7;
  CHECK_THROWS(c.validate());
  c.p = 8;
  c.eta = 0.0;
  CHECK_THROWS(c.validate());
  c.eta = 0.5;
  c.i_max = 0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("single-iteration run returns the initial grid") {
  OptimizerConfig c;
  c.i_max = 1;
  c.seed = 9;
  auto r = run(c, 3, 8, BasisKind::wigner);
  REQUIRE(r.trace.size() == 1);
  Grid init = grids::equispaced_grid_random(8, 9);
  for (std::size_t i = 0; i < init.size(); ++i) {
    CHECK(r.best_grid.phi[i] == init.phi[i]);
    CHECK(r.best_grid.chi[i] == init.chi[i]);
  }
  CHECK(r.final_mu == r.trace[0].mu);
}

TEST_CASE("runs are bitwise reproducible and respect the lower bound") {
  OptimizerConfig c;
  c.method = Method::adam;
  c.i_max = 60;
  c.seed = 4;
  auto r1 = run(c, 4, 12, BasisKind::wigner);
  auto r2 = run(c, 4, 12, BasisKind::wigner);
  REQUIRE(r1.trace.size() == r2.trace.size());
  double best = 1e300;
  for (std::size_t i = 0; i < r1.trace.size(); ++i) {
    CHECK(r1.trace[i].objective == r2.trace[i].objective);
    CHECK(r1.trace[i].mu == r2.trace[i].mu);
    CHECK(r1.trace[i].mu >= r1.lower_bound - 1e-12);
    best = std::min(best, r1.trace[i].mu);
  }
  CHECK(r1.final_mu == best);
  // the returned grid reproduces the reported coherence
  auto rep = coherence::mutual_coherence(
      coherence::build_sensing_matrix(r1.best_grid, 4, BasisKind::wigner));
  CHECK(rep.mu == doctest::Approx(r1.final_mu).epsilon(1e-13));
}

TEST_CASE("trace serialization") {
  OptimizerConfig c;
  c.method = Method::adadelta;
  c.i_max = 3;
  auto r = run(c, 3, 6, BasisKind::spherical);
  std::stringstream ss;
  write_trace_csv(ss, r);
  std::string s = ss.str();
  CHECK(s.rfind("# method=adadelta", 0) == 0);
  CHECK(s.find("rho=0.95") != std::string::npos);
  CHECK(s.find("iter,objective,mu") != std::string::npos);
}

TEST_CASE("method names round trip") {
  for (Method m : {Method::sgd, Method::adam, Method::adagrad, Method::adadelta})
    CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS(parse_method("newton"));
}
