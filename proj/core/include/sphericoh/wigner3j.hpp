#pragma once

#include <gmpxx.h>

// Wigner 3j symbols: selection rules, the zero-order closed form, floating
// evaluation of the general symbol, and an exact big-rational backend for
// the squared symbol (3j values are signed square roots of rationals).

namespace sphericoh::wigner3j {

struct ThreeJArgs {
  int l1 = 0, l2 = 0, l3 = 0;
  int k1 = 0, k2 = 0, k3 = 0;
};

/// True iff every selection rule holds (|k_i| <= l_i, zero k-sum, triangle
/// inequality, and even degree sum when all orders vanish).
bool selection_ok(const ThreeJArgs& a);

/// Closed form for (l1 l2 l3; 0 0 0). Returns 0 for odd degree sum or a
/// triangle violation.
double threej_zero(int l1, int l2, int l3);

/// General 3j symbol. Invalid arguments return 0. Uses a log-gamma
/// compensated alternating sum for small degrees and falls back to the
/// exact rational path above l1+l2+l3 ~ 80, where cancellation would
/// destroy double precision. Results are memoized.
double threej(const ThreeJArgs& a);

/// Exact rational value of the squared symbol (0/1 when any selection
/// rule fails).
mpq_class threej_squared_exact(const ThreeJArgs& a);

/// Sign of the symbol (+1, -1, or 0), determined exactly.
int threej_sign(const ThreeJArgs& a);

}  // namespace sphericoh::wigner3j
