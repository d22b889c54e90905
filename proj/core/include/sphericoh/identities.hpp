#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>

// Closed forms and verification routines for the combinatorial identities
// behind the coherence bound: equispaced Legendre sums and their residual,
// 3j monotonicity / splitting / weighted sums, sampled l2-norm estimates,
// and the Bernoulli/zeta machinery feeding all of them.

namespace sphericoh::identities {

/// Bernoulli number B_j as an exact rational, in the B_1 = +1/2 convention.
mpq_class bernoulli(int j);

/// zeta(j) for even j >= 2, from the exact Bernoulli relation.
double zeta_even(int j);

/// S_l^k = zeta(k) (l+k-1)! 4 / ((k-1)! (l-k+1)! (2 pi)^k).
double legendre_sum_term(int l, int k);

/// sum_p P_l(cos theta_p) over the equispaced grid, split into the leading
/// part 1 + l(l+1)/(6(m-1)) and the residual tail R_l(m).
struct LegendreSumDecomposition {
  int degree = 0;
  int samples = 0;
  double leading = 0.0;
  double residual = 0.0;
  double total() const { return leading + residual; }
};

/// Closed form for even l >= 2 (l = 0 degenerates to total m). Odd l is an
/// argument error; the direct sum vanishes there. Above degree 40 the
/// residual comes from the direct sum minus the leading part, since the
/// alternating series loses precision.
LegendreSumDecomposition legendre_sum_closed_form(int l, int m);

/// Brute-force oracle: sum_p P_l((2p-m-1)/(m-1)).
double direct_legendre_sum(int l, int m);

/// -0.463 < R_l(m) < 0 for even l >= 4 and m >= (l+1)^2/10 + 1.
/// nullopt when the sample-count precondition fails (inapplicable).
std::optional<bool> residual_bound_check(int l, int m);

/// Strict increase and non-negativity of the even-degree sum chain
/// P_2 < P_4 < ... up to degree <= B-1.
bool monotone_sum_check(int bandwidth, int m);

/// Exact-rational squared-3j inequalities: (l1 l2 l3)^2 >= (l1+1 l2+1 l3)^2
/// and >= (l1+2 l2 l3)^2 at zero orders. Requires l1 < l2.
bool threej_monotonicity_check(int l1, int l2, int l3);

/// Even- and odd-degree halves of sum (2lhat+1) 3j(l1,l2,lhat;-k,k,0)
/// 3j(l1,l2,lhat;-n,n,0).
std::pair<double, double> odd_even_split_check(int l1, int l2, int k, int n);

/// Exact value of sum over even lhat of (2lhat+1) 3j(l1,l1+2,lhat;0,0,0)^2
/// (lhat^2+lhat); equals 2 + 2(l1+2)(l1+1).
mpq_class weighted_threej_sum(int l1);

/// Sampled l2-norm estimate (m-1)/(2l+1) + D1(k,n) versus the actual
/// sum of squared d-function samples on the equispaced grid, where
/// D1 = (|d(1)|^2 + |d(-1)|^2)/2 = (delta_{kn} + delta_{k,-n})/2.
struct NormEstimate {
  double estimate = 0.0;
  double actual = 0.0;
  double error = 0.0;
};
NormEstimate l2_norm_estimate(int l, int k, int n, int m);

}  // namespace sphericoh::identities
