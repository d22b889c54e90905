#include "sphericoh/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "sphericoh/coherence.hpp"
#include "sphericoh/specfun.hpp"

namespace sphericoh::optimize {

using grids::ModeIndex;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPairGuard = 1e-14;   // |f| below this contributes no gradient
constexpr double kPoleGuard = 1e-12;   // |cos theta| >= 1 - this counts as a pole

double wrap_angle(double a) {
  double w = a - kTwoPi * std::floor(a / kTwoPi);
  if (w >= kTwoPi) w = 0.0;  // floor rounding at the seam
  return w;
}

struct EvalData {
  Eigen::MatrixXcd ahat;  // m x N, unit-norm columns
  Eigen::MatrixXcd gram;  // ahat^H ahat; (r,q) upper entry is f_{q,r}
  double mu = 0.0;        // max off-diagonal |gram|
  double tsum = 0.0;      // sum over pairs of (|f|/mu)^p
  double objective = 0.0;
};

EvalData evaluate(const Eigen::MatrixXcd& entries,
                  const Eigen::VectorXd& norms, int p) {
  EvalData e;
  const auto n = entries.cols();
  for (Eigen::Index q = 0; q < n; ++q) {
    if (!(norms(q) > 0.0))
      throw std::runtime_error("optimize: zero-norm sensing-matrix column");
  }
  e.ahat = entries;
  for (Eigen::Index q = 0; q < n; ++q) e.ahat.col(q) /= norms(q);
  e.gram = e.ahat.adjoint() * e.ahat;
  for (Eigen::Index r = 0; r + 1 < n; ++r)
    for (Eigen::Index q = r + 1; q < n; ++q)
      e.mu = std::max(e.mu, std::abs(e.gram(r, q)));
  if (e.mu == 0.0) return e;  // no pairs or all-orthogonal: objective 0
  // factor the max out so u <= 1 and the p-th powers stay representable
  for (Eigen::Index r = 0; r + 1 < n; ++r)
    for (Eigen::Index q = r + 1; q < n; ++q)
      e.tsum += std::pow(std::abs(e.gram(r, q)) / e.mu, double(p));
  e.objective = e.mu * std::pow(e.tsum, 1.0 / p);
  return e;
}

// d objective / d angle_s = scale * sum_{r<q} u^{p-2} Re(conj(f) df/dangle_s)
double gradient_scale(const EvalData& e, int p) {
  return std::pow(e.tsum, 1.0 / p - 1.0) / e.mu;
}

// Phase-only gradient (phi or chi): df_{q,r}/dangle_s =
// i*dir*(o_q - o_r) * conj(ahat(s,r)) * ahat(s,q) with o the relevant order.
Eigen::VectorXd grad_phase(const EvalData& e, const std::vector<ModeIndex>& modes,
                           int p, AngleVar wrt, grids::BasisKind kind) {
  const auto n = e.ahat.cols();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(e.ahat.rows());
  if (e.mu == 0.0) return g;
  auto order = [&](Eigen::Index q) {
    return wrt == AngleVar::phi ? modes[std::size_t(q)].k : modes[std::size_t(q)].n;
  };
  const double dir = (kind == grids::BasisKind::spherical) ? 1.0 : -1.0;
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index r = 0; r + 1 < n; ++r) {
    for (Eigen::Index q = r + 1; q < n; ++q) {
      std::complex<double> f = e.gram(r, q);
      double af = std::abs(f);
      int dk = order(q) - order(r);
      if (af < kPairGuard || dk == 0) continue;
      double u = std::pow(af / e.mu, double(p - 2));
      z(q, r) = u * std::conj(f) * std::complex<double>(0.0, dir * dk);
    }
  }
  Eigen::VectorXd v = ((e.ahat * z).cwiseProduct(e.ahat.conjugate()))
                          .rowwise().sum().real();
  return gradient_scale(e, p) * v;
}

// Theta gradient: bhat holds d(ahat-column entries)/d theta_s before norm
// differentiation; the norm term enters through the per-pair weights.
Eigen::VectorXd grad_theta(const EvalData& e, const Eigen::MatrixXcd& bhat, int p) {
  const auto n = e.ahat.cols();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(e.ahat.rows());
  if (e.mu == 0.0) return g;
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r + 1 < n; ++r) {
    for (Eigen::Index q = r + 1; q < n; ++q) {
      std::complex<double> f = e.gram(r, q);
      double af = std::abs(f);
      if (af < kPairGuard) continue;
      double u = std::pow(af / e.mu, double(p - 2));
      z(q, r) = u * std::conj(f);
      w(q) += u * af * af;
      w(r) += u * af * af;
    }
  }
  Eigen::MatrixXcd az = e.ahat * z;
  Eigen::MatrixXcd bz = bhat * z;
  Eigen::VectorXd v1 = (az.cwiseProduct(bhat.conjugate()) +
                        bz.cwiseProduct(e.ahat.conjugate()))
                           .rowwise().sum().real();
  // column norms depend on theta: d|a_q|/dtheta_s = Re(conj(ahat) bhat)(s,q)
  Eigen::MatrixXd nr = e.ahat.conjugate().cwiseProduct(bhat).real();
  Eigen::VectorXd v2 = -(nr * w);
  return gradient_scale(e, p) * (v1 + v2);
}

// d(entries)/d theta_s for column q, scaled by the column norm.
Eigen::MatrixXcd theta_derivative_matrix(const Grid& grid,
                                         const coherence::SensingMatrix& sm) {
  const auto m = sm.entries.rows();
  const auto n = sm.entries.cols();
  Eigen::MatrixXcd bhat(m, n);
  for (Eigen::Index q = 0; q < n; ++q) {
    const ModeIndex& mode = sm.modes[std::size_t(q)];
    for (Eigen::Index s = 0; s < m; ++s) {
      double th = grid.theta[std::size_t(s)];
      if (sm.kind == grids::BasisKind::wigner) {
        double mag = specfun::norm_wigner(mode.l) *
                     specfun::wigner_d_dtheta(mode.l, mode.k, mode.n, th);
        bhat(s, q) = mag * std::polar(1.0, -(mode.k * grid.phi[std::size_t(s)] +
                                             mode.n * grid.chi[std::size_t(s)]));
      } else {
        // Y_l^k = N_l^k d_l^{k,0} / C_l^k e^{ik phi}
        double mag = specfun::norm_sh(mode.l, mode.k) /
                     specfun::ratio_factor(mode.l, mode.k) *
                     specfun::wigner_d_dtheta(mode.l, mode.k, 0, th);
        bhat(s, q) = mag * std::polar(1.0, mode.k * grid.phi[std::size_t(s)]);
      }
    }
    bhat.col(q) /= sm.column_norms(q);
  }
  return bhat;
}

bool is_pole(double cos_theta) { return std::abs(cos_theta) >= 1.0 - kPoleGuard; }

Eigen::VectorXd gradient_impl(const Grid& grid, int bandwidth, int p,
                              AngleVar wrt, grids::BasisKind kind,
                              bool hold_poles) {
  auto sm = coherence::build_sensing_matrix(grid, bandwidth, kind);
  EvalData e = evaluate(sm.entries, sm.column_norms, p);
  if (wrt != AngleVar::theta) {
    if (kind == grids::BasisKind::spherical && wrt == AngleVar::chi)
      return Eigen::VectorXd::Zero(Eigen::Index(grid.size()));
    return grad_phase(e, sm.modes, p, wrt, kind);
  }
  for (std::size_t s = 0; s < grid.size(); ++s) {
    if (!is_pole(grid.cos_theta[s])) continue;
    if (!hold_poles)
      throw std::domain_error("theta gradient is singular at a pole sample");
  }
  Eigen::MatrixXcd bhat = theta_derivative_matrix(grid, sm);
  Eigen::VectorXd g = grad_theta(e, bhat, p);
  if (hold_poles) {
    for (std::size_t s = 0; s < grid.size(); ++s)
      if (is_pole(grid.cos_theta[s])) g(Eigen::Index(s)) = 0.0;
  }
  return g;
}

}  // namespace

Method parse_method(const std::string& s) {
  if (s == "sgd") return Method::sgd;
  if (s == "adam") return Method::adam;
  if (s == "adagrad") return Method::adagrad;
  if (s == "adadelta") return Method::adadelta;
  throw std::invalid_argument("unknown optimizer method: " + s);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::sgd: return "sgd";
    case Method::adam: return "adam";
    case Method::adagrad: return "adagrad";
    case Method::adadelta: return "adadelta";
  }
  throw std::logic_error("method_name: bad enum");
}

void OptimizerConfig::validate() const {
  if (p < 2 || p % 2 != 0)
    throw std::invalid_argument("OptimizerConfig: p must be even and >= 2");
  if (!(eta > 0.0)) throw std::invalid_argument("OptimizerConfig: eta must be > 0");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("OptimizerConfig: epsilon must be > 0");
  if (i_max < 1) throw std::invalid_argument("OptimizerConfig: i_max must be >= 1");
}

double pnorm_objective(const Grid& grid, int bandwidth, int p, BasisKind kind) {
  if (p < 2 || p % 2 != 0)
    throw std::invalid_argument("pnorm_objective: p must be even and >= 2");
  auto sm = coherence::build_sensing_matrix(grid, bandwidth, kind);
  return evaluate(sm.entries, sm.column_norms, p).objective;
}

Eigen::VectorXd gradient(const Grid& grid, int bandwidth, int p, AngleVar wrt,
                         BasisKind kind) {
  if (p < 2 || p % 2 != 0)
    throw std::invalid_argument("gradient: p must be even and >= 2");
  return gradient_impl(grid, bandwidth, p, wrt, kind, /*hold_poles=*/false);
}

void step(Method method, StepState& state, Eigen::VectorXd& params,
          const Eigen::VectorXd& grads, double eta) {
  if (params.size() != grads.size())
    throw std::invalid_argument("step: params/grads size mismatch");
  state.t += 1;
  switch (method) {
    case Method::sgd:
      params -= eta * grads;
      break;
    case Method::adam: {
      state.acc1 = kAdamBeta1 * state.acc1 + (1.0 - kAdamBeta1) * grads;
      state.acc2.array() = kAdamBeta2 * state.acc2.array() +
                           (1.0 - kAdamBeta2) * grads.array().square();
      double c1 = 1.0 - std::pow(kAdamBeta1, state.t);
      double c2 = 1.0 - std::pow(kAdamBeta2, state.t);
      params.array() -= eta * (state.acc1.array() / c1) /
                        ((state.acc2.array() / c2).sqrt() + kAdamEps);
      break;
    }
    case Method::adagrad:
      state.acc2.array() += grads.array().square();
      params.array() -=
          eta * grads.array() / (state.acc2.array().sqrt() + kAdagradEps);
      break;
    case Method::adadelta: {
      state.acc2.array() = kAdadeltaRho * state.acc2.array() +
                           (1.0 - kAdadeltaRho) * grads.array().square();
      Eigen::ArrayXd delta = -(state.acc1.array() + kAdadeltaEps).sqrt() /
                             (state.acc2.array() + kAdadeltaEps).sqrt() *
                             grads.array();
      state.acc1.array() = kAdadeltaRho * state.acc1.array() +
                           (1.0 - kAdadeltaRho) * delta.square();
      params.array() += eta * delta;
      break;
    }
  }
  for (Eigen::Index i = 0; i < params.size(); ++i)
    params(i) = wrap_angle(params(i));
}

OptimizerRun run(const OptimizerConfig& config, int bandwidth, int m,
                 BasisKind kind) {
  config.validate();
  if (m < 2) throw std::invalid_argument("run: m must be >= 2");
  OptimizerRun out;
  out.config = config;
  out.bandwidth = bandwidth;
  out.kind = kind;
  out.lower_bound = coherence::elevation_lower_bound(bandwidth, m, true);

  Grid grid = grids::equispaced_grid_random(m, config.seed);
  const Eigen::Index mm = Eigen::Index(m);
  const bool use_chi = (kind == BasisKind::wigner);

  StepState st_phi(mm), st_chi(mm), st_theta(mm);
  Eigen::VectorXd phi = Eigen::Map<Eigen::VectorXd>(grid.phi.data(), mm);
  Eigen::VectorXd chi = Eigen::Map<Eigen::VectorXd>(grid.chi.data(), mm);
  Eigen::VectorXd theta = Eigen::Map<Eigen::VectorXd>(grid.theta.data(), mm);

  double best_mu = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < config.i_max; ++iter) {
    auto sm = coherence::build_sensing_matrix(grid, bandwidth, kind);
    EvalData e = evaluate(sm.entries, sm.column_norms, config.p);
    out.trace.push_back({iter, e.objective, e.mu});
    if (e.mu < best_mu) {
      best_mu = e.mu;
      out.best_grid = grid;
    }
    if (std::abs(out.lower_bound - e.mu) <= config.epsilon) {
      out.converged = true;
      break;
    }
    if (iter + 1 == config.i_max) break;  // cap reached; skip the unused step

    Eigen::VectorXd g_phi = grad_phase(e, sm.modes, config.p, AngleVar::phi, kind);
    step(config.method, st_phi, phi, g_phi, config.eta);
    if (use_chi) {
      Eigen::VectorXd g_chi = grad_phase(e, sm.modes, config.p, AngleVar::chi, kind);
      step(config.method, st_chi, chi, g_chi, config.eta);
    }
    if (config.optimize_theta) {
      Eigen::MatrixXcd bhat = theta_derivative_matrix(grid, sm);
      Eigen::VectorXd g_theta = grad_theta(e, bhat, config.p);
      for (Eigen::Index s = 0; s < mm; ++s)
        if (is_pole(grid.cos_theta[std::size_t(s)])) g_theta(s) = 0.0;
      step(config.method, st_theta, theta, g_theta, config.eta);
    }
    for (Eigen::Index s = 0; s < mm; ++s) {
      grid.phi[std::size_t(s)] = phi(s);
      if (use_chi) grid.chi[std::size_t(s)] = chi(s);
      if (config.optimize_theta && !is_pole(grid.cos_theta[std::size_t(s)])) {
        grid.theta[std::size_t(s)] = theta(s);
        grid.cos_theta[std::size_t(s)] = std::cos(theta(s));
      }
    }
  }
  out.final_mu = best_mu;
  return out;
}

void write_trace_csv(std::ostream& os, const OptimizerRun& r) {
  os << "# method=" << method_name(r.config.method) << " p=" << r.config.p
     << " eta=" << r.config.eta << " epsilon=" << r.config.epsilon
     << " i_max=" << r.config.i_max << " seed=" << r.config.seed
     << " optimize_theta=" << (r.config.optimize_theta ? 1 : 0)
     << " kind=" << grids::kind_name(r.kind) << " B=" << r.bandwidth
     << " m=" << (r.best_grid.size());
  switch (r.config.method) {
    case Method::adam:
      os << " beta1=" << kAdamBeta1 << " beta2=" << kAdamBeta2
         << " eps_hat=" << kAdamEps;
      break;
    case Method::adagrad:
      os << " eps_hat=" << kAdagradEps;
      break;
    case Method::adadelta:
      os << " rho=" << kAdadeltaRho << " eps_hat=" << kAdadeltaEps;
      break;
    case Method::sgd:
      break;
  }
  os << " mu_lb=" << r.lower_bound << '\n';
  os << "iter,objective,mu\n";
  os.precision(17);
  for (const auto& t : r.trace)
    os << t.iter << ',' << t.objective << ',' << t.mu << '\n';
}

}  // namespace sphericoh::optimize
