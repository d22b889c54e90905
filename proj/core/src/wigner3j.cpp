#include "sphericoh/wigner3j.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace sphericoh::wigner3j {

namespace {

bool triangle_ok(int l1, int l2, int l3) {
  return l3 >= std::abs(l1 - l2) && l3 <= l1 + l2;
}

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

struct TSumRange {
  int lo, hi;
};

TSumRange t_range(const ThreeJArgs& a) {
  int lo = std::max({0, a.l2 - a.l3 - a.k1, a.l1 - a.l3 + a.k2});
  int hi = std::min({a.l1 + a.l2 - a.l3, a.l1 - a.k1, a.l2 + a.k2});
  return {lo, hi};
}

// Denominator factorial arguments of the Racah t-sum, all nonnegative
// within the t range.
std::array<int, 6> t_denoms(const ThreeJArgs& a, int t) {
  return {t,
          a.l1 + a.l2 - a.l3 - t,
          a.l1 - a.k1 - t,
          a.l2 + a.k2 - t,
          a.l3 - a.l2 + a.k1 + t,
          a.l3 - a.l1 - a.k2 + t};
}

int phase_sign(const ThreeJArgs& a) {
  int e = a.l1 - a.l2 - a.k3;
  return (e % 2 == 0) ? 1 : -1;
}

// Exact rational alternating t-sum.
mpq_class t_sum_exact(const ThreeJArgs& a) {
  auto [lo, hi] = t_range(a);
  mpq_class sum = 0;
  for (int t = lo; t <= hi; ++t) {
    mpz_class denom = 1;
    for (int d : t_denoms(a, t)) denom *= factorial(d);
    mpq_class term(mpz_class(1), denom);
    if (t % 2 != 0) term = -term;
    sum += term;
  }
  return sum;
}

// Delta(l1,l2,l3) * product of (l_i +- k_i)! as an exact rational.
mpq_class prefactor_exact(const ThreeJArgs& a) {
  mpz_class num = factorial(a.l1 + a.l2 - a.l3) * factorial(a.l1 - a.l2 + a.l3) *
                  factorial(-a.l1 + a.l2 + a.l3);
  num *= factorial(a.l1 + a.k1) * factorial(a.l1 - a.k1);
  num *= factorial(a.l2 + a.k2) * factorial(a.l2 - a.k2);
  num *= factorial(a.l3 + a.k3) * factorial(a.l3 - a.k3);
  mpz_class den = factorial(a.l1 + a.l2 + a.l3 + 1);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

double threej_float(const ThreeJArgs& a) {
  auto [lo, hi] = t_range(a);
  double log_pref =
      0.5 * (log_factorial(a.l1 + a.l2 - a.l3) + log_factorial(a.l1 - a.l2 + a.l3) +
             log_factorial(-a.l1 + a.l2 + a.l3) - log_factorial(a.l1 + a.l2 + a.l3 + 1) +
             log_factorial(a.l1 + a.k1) + log_factorial(a.l1 - a.k1) +
             log_factorial(a.l2 + a.k2) + log_factorial(a.l2 - a.k2) +
             log_factorial(a.l3 + a.k3) + log_factorial(a.l3 - a.k3));
  std::vector<double> logs(hi - lo + 1);
  double log_max = -1e308;
  for (int t = lo; t <= hi; ++t) {
    double lt = 0.0;
    for (int d : t_denoms(a, t)) lt -= log_factorial(d);
    logs[t - lo] = lt;
    log_max = std::max(log_max, lt);
  }
  // compensated alternating sum with the largest term factored out
  double sum = 0.0, comp = 0.0;
  for (int t = lo; t <= hi; ++t) {
    double term = std::exp(logs[t - lo] - log_max);
    if (t % 2 != 0) term = -term;
    double y = term - comp;
    double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return phase_sign(a) * std::exp(log_pref + log_max) * sum;
}

struct KeyHash {
  size_t operator()(const std::array<int, 6>& k) const {
    size_t h = 1469598103934665603ull;
    for (int v : k) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Canonical key: smallest cyclic permutation, with a global order-sign flip
// folded into a (-1)^(l1+l2+l3) factor.
std::array<int, 6> canonical_key(const ThreeJArgs& a, int& factor) {
  std::array<std::array<int, 6>, 3> perms = {{
      {a.l1, a.l2, a.l3, a.k1, a.k2, a.k3},
      {a.l2, a.l3, a.l1, a.k2, a.k3, a.k1},
      {a.l3, a.l1, a.l2, a.k3, a.k1, a.k2},
  }};
  auto key = *std::min_element(perms.begin(), perms.end());
  factor = 1;
  std::array<int, 6> flipped = {key[0], key[1], key[2], -key[3], -key[4], -key[5]};
  if (flipped < key) {
    key = flipped;
    if ((a.l1 + a.l2 + a.l3) % 2 != 0) factor = -1;
  }
  return key;
}

std::shared_mutex g_cache_mutex;
std::unordered_map<std::array<int, 6>, double, KeyHash> g_cache;

}  // namespace

bool selection_ok(const ThreeJArgs& a) {
  if (a.l1 < 0 || a.l2 < 0 || a.l3 < 0) return false;
  if (std::abs(a.k1) > a.l1 || std::abs(a.k2) > a.l2 || std::abs(a.k3) > a.l3)
    return false;
  if (a.k1 + a.k2 + a.k3 != 0) return false;
  if (!triangle_ok(a.l1, a.l2, a.l3)) return false;
  if (a.k1 == 0 && a.k2 == 0 && a.k3 == 0 && (a.l1 + a.l2 + a.l3) % 2 != 0)
    return false;
  return true;
}

double threej_zero(int l1, int l2, int l3) {
  if (l1 < 0 || l2 < 0 || l3 < 0 || !triangle_ok(l1, l2, l3)) return 0.0;
  if ((l1 + l2 + l3) % 2 != 0) return 0.0;
  int L = (l1 + l2 + l3) / 2;
  double lg = 0.5 * (log_factorial(2 * L - 2 * l1) + log_factorial(2 * L - 2 * l2) +
                     log_factorial(2 * L - 2 * l3) - log_factorial(2 * L + 1)) +
              log_factorial(L) - log_factorial(L - l1) - log_factorial(L - l2) -
              log_factorial(L - l3);
  double v = std::exp(lg);
  return (L % 2 == 0) ? v : -v;
}

double threej(const ThreeJArgs& a) {
  if (!selection_ok(a)) return 0.0;
  int factor = 1;
  auto key = canonical_key(a, factor);
  {
    std::shared_lock lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return factor * it->second;
  }
  ThreeJArgs c{key[0], key[1], key[2], key[3], key[4], key[5]};
  double v;
  int s = threej_sign(c);
  if (s == 0) {
    v = 0.0;  // nontrivial zero: the float t-sum would leave ~1e-16 roundoff
  } else if (c.l1 + c.l2 + c.l3 <= 80) {
    v = threej_float(c);
    // alternating-sum cancellation can corrupt tiny values; trust the exact sign
    if ((v > 0.0) != (s > 0)) v = s * std::sqrt(threej_squared_exact(c).get_d());
  } else {
    v = s * std::sqrt(threej_squared_exact(c).get_d());
  }
  {
    std::unique_lock lock(g_cache_mutex);
    g_cache.emplace(key, v);
  }
  return factor * v;
}

mpq_class threej_squared_exact(const ThreeJArgs& a) {
  if (!selection_ok(a)) return mpq_class(0);
  mpq_class t = t_sum_exact(a);
  mpq_class sq = prefactor_exact(a) * t * t;
  sq.canonicalize();
  return sq;
}

int threej_sign(const ThreeJArgs& a) {
  if (!selection_ok(a)) return 0;
  mpq_class t = t_sum_exact(a);
  int s = sgn(t);
  return phase_sign(a) * s;
}

}  // namespace sphericoh::wigner3j
