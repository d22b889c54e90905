#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <vector>

#include "sphericoh/grids.hpp"

// Sensing-matrix assembly, mutual coherence, and the elevation-only / Welch
// lower bounds, plus the 3j-expansion cross-check for column products.

namespace sphericoh::coherence {

using grids::BasisKind;
using grids::Grid;
using grids::ModeIndex;

struct SensingMatrix {
  Eigen::MatrixXcd entries;  // m x N, A(p,q) = basis function at sample p
  std::vector<ModeIndex> modes;
  Eigen::VectorXd column_norms;
  BasisKind kind = BasisKind::wigner;
  int bandwidth = 0;
};

struct CoherenceReport {
  double mu = 0.0;
  ModeIndex argmax_first;   // lexicographically first column of the pair
  ModeIndex argmax_second;
  double lower_bound = 0.0;  // normalized elevation-only bound
  double welch = 0.0;
  int bandwidth = 0;
  int samples = 0;
  std::size_t columns = 0;
  BasisKind kind = BasisKind::wigner;
};

struct EqualOrderMax {
  double value = 0.0;
  int l1 = 0, l2 = 0, k = 0, n = 0;
};

SensingMatrix build_sensing_matrix(const Grid& grid, int bandwidth,
                                   BasisKind kind);

/// Mutual coherence and its argmax column pair, ties broken by the
/// lexicographically smallest (r, q) index pair.
CoherenceReport mutual_coherence(const SensingMatrix& a);

/// Brute-force maximum of the unnormalized |sum_p d_{l1}^{k,n} d_{l2}^{k,n}|
/// over all 0 <= l1 < l2 <= B-1 and |k|,|n| <= l1 on the grid's elevations.
/// With enough samples the maximum sits at the (B-3, B-1) Legendre pair;
/// at the minimal sample count this ordering breaks down once B >= 8.
EqualOrderMax max_equal_order_product(const Grid& grid, int bandwidth);

/// |sum_p P_{B-1}(cos theta_p) P_{B-3}(cos theta_p)| on the equispaced
/// grid; divided by the sampled l2 norms when normalized.
double elevation_lower_bound(int bandwidth, int m, bool normalized);

/// sqrt((N - m)/(m (N - 1))), 0 when m > N.
double welch_bound(int m, std::size_t n_cols);

/// sum_p conj(D_{l1}^{k1,n1}) D_{l2}^{k2,n2} via the 3j product expansion.
std::complex<double> product_expansion(const ModeIndex& a, const ModeIndex& b,
                                       const Grid& grid);

/// Direct-summation counterpart of product_expansion (oracle route).
std::complex<double> direct_column_product(const ModeIndex& a,
                                           const ModeIndex& b, const Grid& grid);

void write_report_csv(std::ostream& os, const CoherenceReport& r);
void write_report_json(std::ostream& os, const CoherenceReport& r);

}  // namespace sphericoh::coherence
