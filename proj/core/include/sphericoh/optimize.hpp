#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sphericoh/grids.hpp"

// Gradient descent on the p-norm relaxation of mutual coherence over the
// azimuth (and polarization) angles of a fixed-elevation grid.

namespace sphericoh::optimize {

using grids::BasisKind;
using grids::Grid;

enum class Method { sgd, adam, adagrad, adadelta };

Method parse_method(const std::string& s);
std::string method_name(Method m);

enum class AngleVar { phi, chi, theta };

struct OptimizerConfig {
  int p = 8;               // relaxation exponent, even >= 2
  double eta = 0.5;        // step size
  double epsilon = 1e-4;   // stopping gap |mu_LB - mu|
  int i_max = 1000;        // iteration cap
  Method method = Method::sgd;
  std::uint64_t seed = 0;  // drives the uniform phi/chi initialization
  bool optimize_theta = false;

  void validate() const;  // throws std::invalid_argument on bad fields
};

struct TracePoint {
  int iter = 0;
  double objective = 0.0;
  double mu = 0.0;
};

struct OptimizerRun {
  std::vector<TracePoint> trace;
  Grid best_grid;          // lowest-mu iterate, not the last one
  double final_mu = 0.0;   // min over trace of mu
  bool converged = false;  // |mu_LB - mu| <= epsilon reached
  double lower_bound = 0.0;
  OptimizerConfig config;
  int bandwidth = 0;
  BasisKind kind = BasisKind::wigner;
};

/// (sum_{r<q} |f_{q,r}|^p)^{1/p} over normalized column inner products,
/// accumulated with the largest magnitude factored out so |f|^p cannot
/// underflow the total.
double pnorm_objective(const Grid& grid, int bandwidth, int p, BasisKind kind);

/// Analytic gradient of pnorm_objective w.r.t. the chosen angle vector.
/// The chi gradient of a spherical-harmonics matrix is identically zero.
/// The theta gradient requires interior elevations and throws
/// std::domain_error when the grid contains pole samples.
Eigen::VectorXd gradient(const Grid& grid, int bandwidth, int p, AngleVar wrt,
                         BasisKind kind);

/// Per-parameter-vector optimizer state. acc1/acc2 are the first/second
/// moment (adam), the squared-gradient sum (adagrad), or the squared
/// update / squared gradient averages (adadelta).
struct StepState {
  Eigen::VectorXd acc1;
  Eigen::VectorXd acc2;
  int t = 0;

  explicit StepState(Eigen::Index n)
      : acc1(Eigen::VectorXd::Zero(n)), acc2(Eigen::VectorXd::Zero(n)) {}
};

// Hyperparameters of the adaptive methods, standard defaults.
inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEps = 1e-8;
inline constexpr double kAdagradEps = 1e-8;
inline constexpr double kAdadeltaRho = 0.95;
inline constexpr double kAdadeltaEps = 1e-6;

/// One optimizer update; angles are wrapped into [0, 2pi) afterwards.
void step(Method method, StepState& state, Eigen::VectorXd& params,
          const Eigen::VectorXd& grads, double eta);

/// Full run: uniform-random phi/chi initialization on the equispaced
/// elevation grid, iterate until |mu_LB - mu| <= epsilon or i_max, with
/// mu_LB the normalized elevation-only lower bound. Deterministic given
/// the seed. Pole elevations stay fixed when optimize_theta is on.
OptimizerRun run(const OptimizerConfig& config, int bandwidth, int m,
                 BasisKind kind);

/// `#`-prefixed config line, then `iter,objective,mu` rows.
void write_trace_csv(std::ostream& os, const OptimizerRun& r);

}  // namespace sphericoh::optimize
