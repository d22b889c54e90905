#include "sphericoh/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sphericoh::specfun {

namespace {

constexpr double kDomainSlack = 1e-12;  // grid arithmetic can land at 1+ulp

double checked_x(double x, const char* fn) {
  if (std::abs(x) > 1.0 + kDomainSlack) {
    throw std::domain_error(std::string(fn) + ": argument outside [-1, 1]: " +
                            std::to_string(x));
  }
  return std::clamp(x, -1.0, 1.0);
}

void check_order(int l, int k, const char* fn) {
  if (l < 0 || std::abs(k) > l) {
    throw std::invalid_argument(std::string(fn) + ": order |" +
                                std::to_string(k) + "| exceeds degree " +
                                std::to_string(l));
  }
}

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

}  // namespace

WignerDParams WignerDParams::make(int l, int k, int n) {
  check_order(l, k, "wigner_d");
  check_order(l, n, "wigner_d");
  WignerDParams p;
  p.l = l;
  p.k = k;
  p.n = n;
  p.xi = std::abs(k - n);
  p.lambda = std::abs(k + n);
  p.alpha = l - (p.xi + p.lambda) / 2;
  p.sign = (n >= k) ? 1 : (((n - k) % 2 == 0) ? 1 : -1);
  p.log_sqrt_gamma =
      0.5 * (log_factorial(p.alpha) + log_factorial(p.alpha + p.xi + p.lambda) -
             log_factorial(p.alpha + p.xi) - log_factorial(p.alpha + p.lambda));
  return p;
}

double norm_wigner(int l) {
  return std::sqrt((2.0 * l + 1.0) / (8.0 * std::numbers::pi * std::numbers::pi));
}

double norm_sh(int l, int k) {
  check_order(l, k, "norm_sh");
  double lg = std::log((2.0 * l + 1.0) / (4.0 * std::numbers::pi)) +
              log_factorial(l - k) - log_factorial(l + k);
  return std::exp(0.5 * lg);
}

double ratio_factor(int l, int k) {
  check_order(l, k, "ratio_factor");
  return std::exp(0.5 * (log_factorial(l - k) - log_factorial(l + k)));
}

double legendre(int l, double x) {
  if (l < 0) throw std::invalid_argument("legendre: negative degree");
  x = checked_x(x, "legendre");
  double pm2 = 1.0;
  if (l == 0) return pm2;
  double pm1 = x;
  for (int j = 2; j <= l; ++j) {
    double p = ((2.0 * j - 1.0) * x * pm1 - (j - 1.0) * pm2) / j;
    pm2 = pm1;
    pm1 = p;
  }
  return pm1;
}

double assoc_legendre(int l, int k, double x) {
  check_order(l, k, "assoc_legendre");
  x = checked_x(x, "assoc_legendre");
  if (k < 0) {
    // single code path: reduce to nonnegative order via the symmetry
    int kk = -k;
    double factor = std::exp(log_factorial(l - kk) - log_factorial(l + kk));
    if (kk % 2 != 0) factor = -factor;
    return factor * assoc_legendre(l, kk, x);
  }
  if (k == 0) return legendre(l, x);
  double s2 = (1.0 - x) * (1.0 + x);  // sin^2 theta
  if (s2 <= 0.0) return 0.0;
  // seed P_k^k = (-1)^k (2k-1)!! (1-x^2)^(k/2), accumulated in log space
  double log_seed = 0.5 * k * std::log(s2);
  for (int j = 1; j <= k; ++j) log_seed += std::log(2.0 * j - 1.0);
  double pkk = std::exp(log_seed);
  if (k % 2 != 0) pkk = -pkk;
  if (l == k) return pkk;
  double pm2 = pkk;
  double pm1 = x * (2.0 * k + 1.0) * pkk;  // P_{k+1}^k
  for (int j = k + 2; j <= l; ++j) {
    double p = ((2.0 * j - 1.0) * x * pm1 - (j + k - 1.0) * pm2) / (j - k);
    pm2 = pm1;
    pm1 = p;
  }
  return pm1;
}

double jacobi(int alpha, int xi, int lambda, double x) {
  if (alpha < 0 || xi < 0 || lambda < 0) {
    throw std::invalid_argument("jacobi: negative parameter");
  }
  x = checked_x(x, "jacobi");
  double a = xi, b = lambda;
  double pm2 = 1.0;
  if (alpha == 0) return pm2;
  double pm1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int j = 2; j <= alpha; ++j) {
    double c1 = 2.0 * j * (j + a + b) * (2.0 * j + a + b - 2.0);
    double c2 = (2.0 * j + a + b - 1.0) *
                ((2.0 * j + a + b) * (2.0 * j + a + b - 2.0) * x + a * a - b * b);
    double c3 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * (2.0 * j + a + b);
    double p = (c2 * pm1 - c3 * pm2) / c1;
    pm2 = pm1;
    pm1 = p;
  }
  return pm1;
}

namespace {

double wigner_d_impl(const WignerDParams& p, double s, double c, double x) {
  if (p.xi > 0 && s == 0.0) return 0.0;
  if (p.lambda > 0 && c == 0.0) return 0.0;
  double log_weight = p.log_sqrt_gamma;
  if (p.xi > 0) log_weight += p.xi * std::log(s);
  if (p.lambda > 0) log_weight += p.lambda * std::log(c);
  return p.sign * std::exp(log_weight) * jacobi(p.alpha, p.xi, p.lambda, x);
}

}  // namespace

double wigner_d(int l, int k, int n, double theta) {
  const auto p = WignerDParams::make(l, k, n);
  return wigner_d_impl(p, std::abs(std::sin(0.5 * theta)),
                       std::abs(std::cos(0.5 * theta)), std::cos(theta));
}

double wigner_d_cos(int l, int k, int n, double x) {
  const auto p = WignerDParams::make(l, k, n);
  x = checked_x(x, "wigner_d_cos");
  // theta in [0, pi]: sin(theta/2), cos(theta/2) both nonnegative
  return wigner_d_impl(p, std::sqrt(0.5 * (1.0 - x)), std::sqrt(0.5 * (1.0 + x)),
                       x);
}

namespace {

// v^e with the 0^0 = 1 convention.
double ipow(double v, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= v;
  return r;
}

}  // namespace

double wigner_d_dtheta(int l, int k, int n, double theta) {
  const auto p = WignerDParams::make(l, k, n);
  double s = std::sin(0.5 * theta);
  double c = std::cos(0.5 * theta);
  double x = std::cos(theta);
  double w = p.sign * std::exp(p.log_sqrt_gamma);
  // d = w s^xi c^lambda P; differentiate the trig weight and chain through
  // the Jacobi factor (dP_a^(xi,la)/dx = (a+xi+la+1)/2 P_{a-1}^(xi+1,la+1))
  double jac = jacobi(p.alpha, p.xi, p.lambda, x);
  // a zero exponent zeroes its half of the weight derivative via the 0.5*xi
  // (resp. 0.5*lambda) prefactor, so the negative-exponent ipow is never used
  double term1 =
      w * jac *
      (0.5 * p.xi * ipow(s, p.xi - 1) * ipow(c, p.lambda + 1) -
       0.5 * p.lambda * ipow(s, p.xi + 1) * ipow(c, p.lambda - 1));
  double term2 = 0.0;
  if (p.alpha >= 1) {
    double djac = 0.5 * (p.alpha + p.xi + p.lambda + 1) *
                  jacobi(p.alpha - 1, p.xi + 1, p.lambda + 1, x);
    term2 = -std::sin(theta) * w * ipow(s, p.xi) * ipow(c, p.lambda) * djac;
  }
  return term1 + term2;
}

std::complex<double> spherical_harmonic(int l, int k, double theta, double phi) {
  check_order(l, k, "spherical_harmonic");
  double mag = norm_sh(l, k) * assoc_legendre(l, k, std::cos(theta));
  return mag * std::polar(1.0, k * phi);
}

std::complex<double> wigner_D(int l, int k, int n, double theta, double phi,
                              double chi) {
  double mag = norm_wigner(l) * wigner_d(l, k, n, theta);
  return mag * std::polar(1.0, -(k * phi + n * chi));
}

}  // namespace sphericoh::specfun
