#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "tvg/rational.hpp"

namespace tvg {

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Smallest prime p >= r. Asserts the short-interval bound
/// p < r + r^{7/11} + 1; the float check falls back to an exact big-integer
/// comparison when the margin is thin.
inline int next_prime_in_gap(int r) {
  if (r < 2) throw std::invalid_argument("next_prime_in_gap: r must be >= 2");
  int p = r;
  while (!is_prime(p)) ++p;
  const double bound =
      static_cast<double>(r) + std::pow(static_cast<double>(r), 7.0 / 11.0) + 1.0;
  if (static_cast<double>(p) < bound - 1e-6) return p;
  const long long excess = static_cast<long long>(p) - r - 1;
  if (excess < 0) return p;
  BigInt lhs = 1, rhs = 1;
  for (int i = 0; i < 11; ++i) lhs *= excess;
  for (int i = 0; i < 7; ++i) rhs *= r;
  if (lhs < rhs) return p;
  throw std::logic_error("next_prime_in_gap: prime gap bound violated at r=" +
                         std::to_string(r));
}

}  // namespace tvg
