#include "sphericoh/coherence.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "sphericoh/parallel.hpp"
#include "sphericoh/specfun.hpp"
#include "sphericoh/wigner3j.hpp"

namespace sphericoh::coherence {

SensingMatrix build_sensing_matrix(const Grid& grid, int bandwidth,
                                   BasisKind kind) {
  if (grid.size() == 0) throw std::invalid_argument("build_sensing_matrix: empty grid");
  if (bandwidth < 1) throw std::invalid_argument("build_sensing_matrix: B must be >= 1");
  SensingMatrix sm;
  sm.kind = kind;
  sm.bandwidth = bandwidth;
  sm.modes = grids::enumerate_modes(bandwidth, kind);
  const auto m = static_cast<Eigen::Index>(grid.size());
  const auto n = static_cast<Eigen::Index>(sm.modes.size());
  sm.entries.resize(m, n);
  parallel::parallel_for(std::size_t(n), [&](std::size_t q) {
    const ModeIndex& mode = sm.modes[q];
    for (Eigen::Index p = 0; p < m; ++p) {
      if (kind == BasisKind::wigner) {
        // exact cos theta avoids the arccos/cos round trip in the Jacobi arg
        double mag = specfun::norm_wigner(mode.l) *
                     specfun::wigner_d_cos(mode.l, mode.k, mode.n,
                                           grid.cos_theta[std::size_t(p)]);
        sm.entries(p, Eigen::Index(q)) =
            mag * std::polar(1.0, -(mode.k * grid.phi[std::size_t(p)] +
                                    mode.n * grid.chi[std::size_t(p)]));
      } else {
        double mag = specfun::norm_sh(mode.l, mode.k) *
                     specfun::assoc_legendre(mode.l, mode.k,
                                             grid.cos_theta[std::size_t(p)]);
        sm.entries(p, Eigen::Index(q)) =
            mag * std::polar(1.0, mode.k * grid.phi[std::size_t(p)]);
      }
    }
  });
  sm.column_norms = sm.entries.colwise().norm();
  return sm;
}

CoherenceReport mutual_coherence(const SensingMatrix& a) {
  const auto n = a.entries.cols();
  if (n < 2) throw std::invalid_argument("mutual_coherence: need at least 2 columns");
  for (Eigen::Index q = 0; q < n; ++q) {
    if (!(a.column_norms(q) > 0.0))
      throw std::runtime_error("mutual_coherence: zero-norm column (degenerate matrix)");
  }
  Eigen::MatrixXcd gram = a.entries.adjoint() * a.entries;
  CoherenceReport rep;
  rep.kind = a.kind;
  rep.bandwidth = a.bandwidth;
  rep.samples = int(a.entries.rows());
  rep.columns = std::size_t(n);
  double best = -1.0;
  Eigen::Index br = 0, bq = 1;
  for (Eigen::Index r = 0; r + 1 < n; ++r) {
    for (Eigen::Index q = r + 1; q < n; ++q) {
      double v = std::abs(gram(r, q)) / (a.column_norms(r) * a.column_norms(q));
      if (v > best) {  // strict: first (r,q) in lexicographic order wins ties
        best = v;
        br = r;
        bq = q;
      }
    }
  }
  rep.mu = best;
  rep.argmax_first = a.modes[std::size_t(br)];
  rep.argmax_second = a.modes[std::size_t(bq)];
  if (a.bandwidth >= 3 && rep.samples >= 2) {
    rep.lower_bound = elevation_lower_bound(a.bandwidth, rep.samples, true);
  }
  rep.welch = welch_bound(rep.samples, rep.columns);
  return rep;
}

EqualOrderMax max_equal_order_product(const Grid& grid, int bandwidth) {
  if (bandwidth < 3)
    throw std::invalid_argument("max_equal_order_product: B must be >= 3 (no valid pair)");
  const int m = int(grid.size());
  const int lmax = bandwidth - 1;
  // cache d_l^{k,n} sample vectors per (l, k, n)
  std::vector<std::vector<std::vector<double>>> dvals(std::size_t(lmax) + 1);
  for (int l = 0; l <= lmax; ++l) {
    std::size_t w = std::size_t(2 * l + 1);
    dvals[l].resize(w * w);
  }
  parallel::parallel_for(std::size_t(lmax) + 1, [&](std::size_t li) {
    int l = int(li);
    int w = 2 * l + 1;
    for (int k = -l; k <= l; ++k) {
      for (int n = -l; n <= l; ++n) {
        auto& vec = dvals[l][std::size_t((k + l) * w + (n + l))];
        vec.resize(m);
        for (int p = 0; p < m; ++p)
          vec[p] = specfun::wigner_d_cos(l, k, n, grid.cos_theta[p]);
      }
    }
  });
  EqualOrderMax best;
  best.value = -1.0;
  for (int l1 = 0; l1 < lmax; ++l1) {
    for (int l2 = l1 + 1; l2 <= lmax; ++l2) {
      int w1 = 2 * l1 + 1, w2 = 2 * l2 + 1;
      for (int k = -l1; k <= l1; ++k) {
        for (int n = -l1; n <= l1; ++n) {
          const auto& v1 = dvals[l1][std::size_t((k + l1) * w1 + (n + l1))];
          const auto& v2 = dvals[l2][std::size_t((k + l2) * w2 + (n + l2))];
          double s = 0.0;
          for (int p = 0; p < m; ++p) s += v1[p] * v2[p];
          double av = std::abs(s);
          if (av > best.value) best = {av, l1, l2, k, n};
        }
      }
    }
  }
  return best;
}

double elevation_lower_bound(int bandwidth, int m, bool normalized) {
  if (bandwidth < 3) throw std::invalid_argument("elevation_lower_bound: B must be >= 3");
  if (m < 2) throw std::invalid_argument("elevation_lower_bound: m must be >= 2");
  double sum = 0.0, n1 = 0.0, n2 = 0.0;
  for (int p = 1; p <= m; ++p) {
    double x = double(2 * p - m - 1) / double(m - 1);
    double a = specfun::legendre(bandwidth - 1, x);
    double b = specfun::legendre(bandwidth - 3, x);
    sum += a * b;
    n1 += a * a;
    n2 += b * b;
  }
  double v = std::abs(sum);
  if (normalized) v /= std::sqrt(n1 * n2);
  return v;
}

double welch_bound(int m, std::size_t n_cols) {
  if (m < 1 || n_cols < 1) throw std::invalid_argument("welch_bound: m, N must be >= 1");
  double n = double(n_cols);
  if (double(m) > n) return 0.0;
  if (n == 1.0) return 0.0;
  return std::sqrt((n - m) / (m * (n - 1.0)));
}

std::complex<double> direct_column_product(const ModeIndex& a,
                                           const ModeIndex& b, const Grid& grid) {
  std::complex<double> s = 0.0;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    s += std::conj(specfun::wigner_D(a.l, a.k, a.n, grid.theta[p], grid.phi[p],
                                     grid.chi[p])) *
         specfun::wigner_D(b.l, b.k, b.n, grid.theta[p], grid.phi[p], grid.chi[p]);
  }
  return s;
}

std::complex<double> product_expansion(const ModeIndex& a, const ModeIndex& b,
                                       const Grid& grid) {
  const int khat = b.k - a.k;
  const int nhat = b.n - a.n;
  const double phase = ((b.k + b.n) % 2 == 0) ? 1.0 : -1.0;
  std::complex<double> total = 0.0;
  for (int lhat = std::abs(b.l - a.l); lhat <= a.l + b.l; ++lhat) {
    if (std::abs(khat) > lhat || std::abs(nhat) > lhat) continue;
    double w_n = wigner3j::threej({a.l, b.l, lhat, -a.n, b.n, -nhat});
    if (w_n == 0.0) continue;
    double w_k = wigner3j::threej({a.l, b.l, lhat, -a.k, b.k, -khat});
    if (w_k == 0.0) continue;
    double scale = std::sqrt((2.0 * a.l + 1.0) * (2.0 * b.l + 1.0) *
                             (2.0 * lhat + 1.0) /
                             (8.0 * std::numbers::pi * std::numbers::pi));
    std::complex<double> dsum = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      dsum += specfun::wigner_D(lhat, khat, nhat, grid.theta[p], grid.phi[p],
                                grid.chi[p]);
    }
    total += scale * w_n * w_k * dsum;
  }
  return phase * total;
}

void write_report_csv(std::ostream& os, const CoherenceReport& r) {
  os << "B,m,N,kind,mu,lower_bound,welch,arg_l1,arg_k1,arg_n1,arg_l2,arg_k2,arg_n2\n";
  os.precision(17);
  os << r.bandwidth << ',' << r.samples << ',' << r.columns << ','
     << grids::kind_name(r.kind) << ',' << r.mu << ',' << r.lower_bound << ','
     << r.welch << ',' << r.argmax_first.l << ',' << r.argmax_first.k << ','
     << r.argmax_first.n << ',' << r.argmax_second.l << ',' << r.argmax_second.k
     << ',' << r.argmax_second.n << '\n';
}

void write_report_json(std::ostream& os, const CoherenceReport& r) {
  nlohmann::json j{
      {"B", r.bandwidth},
      {"m", r.samples},
      {"N", r.columns},
      {"kind", grids::kind_name(r.kind)},
      {"mu", r.mu},
      {"lower_bound", r.lower_bound},
      {"welch", r.welch},
      {"arg_l1", r.argmax_first.l},
      {"arg_k1", r.argmax_first.k},
      {"arg_n1", r.argmax_first.n},
      {"arg_l2", r.argmax_second.l},
      {"arg_k2", r.argmax_second.k},
      {"arg_n2", r.argmax_second.n},
  };
  os << j.dump(2) << '\n';
}

}  // namespace sphericoh::coherence
