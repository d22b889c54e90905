#pragma once

#include <complex>

// Special-function evaluation for sensing-matrix construction on the
// sphere and the rotation group: Legendre, associated Legendre and
// Jacobi polynomials, Wigner d- and D-functions, spherical harmonics.
//
// All functions are pure and thread-safe. Degrees up to a few hundred
// are supported without overflow; normalization constants and seed
// values are accumulated in log space.

namespace sphericoh::specfun {

// Decomposition of a Wigner d-function d_l^{k,n} into its weighted
// Jacobi-polynomial form: d = sign * sqrt(gamma) * sin^xi(theta/2) *
// cos^lambda(theta/2) * P_alpha^(xi,lambda)(cos theta).
struct WignerDParams {
  int l = 0;
  int k = 0;
  int n = 0;
  int xi = 0;      // |k - n|
  int lambda = 0;  // |k + n|
  int alpha = 0;   // l - (xi + lambda)/2, always a nonnegative integer
  int sign = 1;    // +1 if n >= k, else (-1)^(n-k)
  double log_sqrt_gamma = 0.0;

  static WignerDParams make(int l, int k, int n);
};

/// sqrt((2l+1) / (8 pi^2)), the unit-L2-norm factor of D_l^{k,n}.
double norm_wigner(int l);

/// sqrt((2l+1)/(4 pi) * (l-k)!/(l+k)!), the unit-L2-norm factor of Y_l^k.
double norm_sh(int l, int k);

/// sqrt((l-k)!/(l+k)!), relating d_l^{k,0} to the associated Legendre
/// polynomial P_l^k.
double ratio_factor(int l, int k);

/// Legendre polynomial P_l(x) by the three-term recurrence.
/// Throws std::domain_error if |x| > 1 + 1e-12.
double legendre(int l, double x);

/// Associated Legendre polynomial P_l^k(x) with the Condon-Shortley
/// phase (-1)^k. Accepts any |k| <= l; negative orders go through the
/// symmetry P_l^{-k} = (-1)^k (l-k)!/(l+k)! P_l^k.
double assoc_legendre(int l, int k, double x);

/// Jacobi polynomial P_alpha^(xi,lambda)(x) by the standard three-term
/// recurrence. alpha, xi, lambda must be nonnegative integers.
double jacobi(int alpha, int xi, int lambda, double x);

/// Wigner d-function d_l^{k,n}(cos theta), theta in [0, pi].
double wigner_d(int l, int k, int n, double theta);

/// Same function evaluated directly from x = cos theta, for callers that
/// carry exact grid abscissas.
double wigner_d_cos(int l, int k, int n, double x);

/// Derivative of d_l^{k,n}(cos theta) with respect to theta.
/// Singular at theta = 0 when xi > 0 is handled by the vanishing weight
/// except at the poles themselves; callers that optimize theta must keep
/// pole samples fixed.
double wigner_d_dtheta(int l, int k, int n, double theta);

/// Spherical harmonic Y_l^k(theta, phi) = N_l^k P_l^k(cos theta) e^{ik phi}.
std::complex<double> spherical_harmonic(int l, int k, double theta, double phi);

/// Wigner D-function D_l^{k,n} = N_l e^{-ik phi} d_l^{k,n}(cos theta) e^{-in chi}.
std::complex<double> wigner_D(int l, int k, int n, double theta, double phi,
                              double chi);

}  // namespace sphericoh::specfun
