#include "sphericoh/identities.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sphericoh/specfun.hpp"
#include "sphericoh/wigner3j.hpp"

namespace sphericoh::identities {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr int kBernoulliMax = 128;

// Akiyama-Tanigawa recurrence; yields the B_1 = +1/2 convention directly.
// Built once, immutable afterwards.
const std::vector<mpq_class>& bernoulli_table() {
  static const std::vector<mpq_class> table = [] {
    std::vector<mpq_class> t(kBernoulliMax + 1);
    std::vector<mpq_class> row(kBernoulliMax + 1);
    for (int n = 0; n <= kBernoulliMax; ++n) {
      row[std::size_t(n)] = mpq_class(1, n + 1);
      for (int j = n; j >= 1; --j)
        row[std::size_t(j - 1)] = j * (row[std::size_t(j - 1)] - row[std::size_t(j)]);
      t[std::size_t(n)] = row[0];
    }
    return t;
  }();
  return table;
}

}  // namespace

mpq_class bernoulli(int j) {
  if (j < 0 || j > kBernoulliMax)
    throw std::invalid_argument("bernoulli: index out of table range");
  return bernoulli_table()[std::size_t(j)];
}

double zeta_even(int j) {
  if (j < 2 || j % 2 != 0) throw std::invalid_argument("zeta_even: need even j >= 2");
  // B_j = (-1)^(j/2+1) 2 j! zeta(j) / (2 pi)^j
  double bj = std::abs(bernoulli(j).get_d());
  double log_scale = j * std::log(kTwoPi) - std::lgamma(double(j) + 1.0);
  return 0.5 * bj * std::exp(log_scale);
}

double legendre_sum_term(int l, int k) {
  if (k < 2 || k > l) throw std::invalid_argument("legendre_sum_term: need 2 <= k <= l");
  double lg = std::lgamma(double(l + k)) - std::lgamma(double(k)) -
              std::lgamma(double(l - k + 2)) - k * std::log(kTwoPi) +
              std::log(4.0);
  return zeta_even(k) * std::exp(lg);
}

LegendreSumDecomposition legendre_sum_closed_form(int l, int m) {
  if (m < 2) throw std::invalid_argument("legendre_sum_closed_form: m must be >= 2");
  if (l < 0 || (l > 0 && l % 2 != 0))
    throw std::invalid_argument("legendre_sum_closed_form: degree must be even");
  LegendreSumDecomposition d;
  d.degree = l;
  d.samples = m;
  if (l == 0) {
    d.leading = double(m);
    d.residual = 0.0;
    return d;
  }
  d.leading = 1.0 + double(l) * (l + 1) / (6.0 * (m - 1));
  if (l <= 40) {
    double r = 0.0;
    for (int k = 4; k <= l; k += 2) {
      double term = legendre_sum_term(l, k) / std::pow(double(m - 1), k - 1);
      r += (k / 2 % 2 == 0) ? -term : term;  // (-1)^(k/2+1)
    }
    d.residual = r;
  } else {
    // the alternating S-series cancels catastrophically at high degree
    d.residual = direct_legendre_sum(l, m) - d.leading;
  }
  return d;
}

double direct_legendre_sum(int l, int m) {
  if (m < 2) throw std::invalid_argument("direct_legendre_sum: m must be >= 2");
  double s = 0.0;
  for (int p = 1; p <= m; ++p) {
    double x = double(2 * p - m - 1) / double(m - 1);
    s += specfun::legendre(l, x);
  }
  return s;
}

std::optional<bool> residual_bound_check(int l, int m) {
  if (l < 4 || l % 2 != 0) throw std::invalid_argument("residual_bound_check: need even l >= 4");
  if (10 * (m - 1) < (l + 1) * (l + 1)) return std::nullopt;
  double r = legendre_sum_closed_form(l, m).residual;
  return r > -0.463 && r < 0.0;
}

bool monotone_sum_check(int bandwidth, int m) {
  double prev = 0.0;
  bool first = true;
  for (int l = 2; l <= bandwidth - 1; l += 2) {
    double s = direct_legendre_sum(l, m);
    if (s < 0.0) return false;
    if (!first && s <= prev) return false;
    prev = s;
    first = false;
  }
  return true;
}

bool threej_monotonicity_check(int l1, int l2, int l3) {
  if (l1 >= l2) throw std::invalid_argument("threej_monotonicity_check: need l1 < l2");
  mpq_class base = wigner3j::threej_squared_exact({l1, l2, l3, 0, 0, 0});
  mpq_class shift_both = wigner3j::threej_squared_exact({l1 + 1, l2 + 1, l3, 0, 0, 0});
  mpq_class shift_first = wigner3j::threej_squared_exact({l1 + 2, l2, l3, 0, 0, 0});
  return base >= shift_both && base >= shift_first;
}

std::pair<double, double> odd_even_split_check(int l1, int l2, int k, int n) {
  double even = 0.0, odd = 0.0;
  for (int lhat = std::abs(l1 - l2); lhat <= l1 + l2; ++lhat) {
    double v = (2.0 * lhat + 1.0) * wigner3j::threej({l1, l2, lhat, -k, k, 0}) *
               wigner3j::threej({l1, l2, lhat, -n, n, 0});
    (lhat % 2 == 0 ? even : odd) += v;
  }
  return {even, odd};
}

mpq_class weighted_threej_sum(int l1) {
  if (l1 < 0) throw std::invalid_argument("weighted_threej_sum: negative degree");
  mpq_class total = 0;
  for (int lhat = 2; lhat <= 2 * l1 + 2; lhat += 2) {
    mpq_class sq = wigner3j::threej_squared_exact({l1, l1 + 2, lhat, 0, 0, 0});
    total += (2 * lhat + 1) * sq * (lhat * lhat + lhat);
  }
  total.canonicalize();
  return total;
}

NormEstimate l2_norm_estimate(int l, int k, int n, int m) {
  if (m < 2) throw std::invalid_argument("l2_norm_estimate: m must be >= 2");
  NormEstimate e;
  // D1 = (|d(1)|^2 + |d(-1)|^2)/2 with d(1) = delta_{kn}, |d(-1)| = delta_{k,-n}
  double d1 = 0.0;
  if (k == n) d1 += 0.5;
  if (k == -n) d1 += 0.5;
  e.estimate = double(m - 1) / (2.0 * l + 1.0) + d1;
  e.actual = 0.0;
  for (int p = 1; p <= m; ++p) {
    double x = double(2 * p - m - 1) / double(m - 1);
    double d = specfun::wigner_d_cos(l, k, n, x);
    e.actual += d * d;
  }
  e.error = std::abs(e.actual - e.estimate);
  return e;
}

}  // namespace sphericoh::identities
