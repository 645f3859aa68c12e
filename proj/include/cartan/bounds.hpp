#pragma once

// Dimension counts for the space of limit groups: dim of the seed moduli,
// the integer optimization behind the quadratic lower bound, and the k^2 - k
// upper bound.

#include <cstdint>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/rational.hpp"

namespace cartan {

/// nm - n^2 - m + 1 = (n-1)(m-n-1), for m >= n+2, n >= 2.
inline std::int64_t dim_T(std::int64_t m, std::int64_t n) {
  if (n < 2 || m < n + 2) throw Error(Errc::InvalidShape, "dim_T needs m >= n+2 and n >= 2");
  return n * m - n * n - m + 1;
}

/// kn - 2n^2 - k + 2, i.e. dim_T(k-n-1, n).
inline std::int64_t g_value(std::int64_t k, std::int64_t n) { return k * n - 2 * n * n - k + 2; }

struct IntegerSplit {
  std::int64_t m;
  std::int64_t n;
  std::int64_t value;
};

/// Maximizes g_value(k, n) over m = k-n-1, m-2 >= n >= 2; ties go to the smaller n.
inline IntegerSplit best_integer_split(std::int64_t k) {
  if (k < 7) throw Error(Errc::KTooSmall, "k must be at least 7");
  IntegerSplit best{0, 0, 0};
  bool have = false;
  for (std::int64_t n = 2; k - n - 1 - 2 >= n; ++n) {
    const std::int64_t v = g_value(k, n);
    if (!have || v > best.value) {
      best = {k - n - 1, n, v};
      have = true;
    }
  }
  return best;
}

inline Rational lower_bound(std::int64_t k) {
  if (k < 7) throw Error(Errc::KTooSmall, "k must be at least 7");
  return Rational(k * k - 8 * k + 12, 8);
}

inline std::int64_t upper_bound(std::int64_t k) { return k * k - k; }

struct BoundsReport {
  std::int64_t k;
  std::int64_t best_m;
  std::int64_t best_n;
  std::int64_t best_value;
  Rational lower_bound;
  std::int64_t upper_bound;
  bool ok;
};

inline std::vector<BoundsReport> verify_bounds(std::int64_t k_lo, std::int64_t k_hi) {
  if (k_lo < 7) throw Error(Errc::KTooSmall, "k must be at least 7");
  if (k_hi < k_lo) throw Error(Errc::InvalidShape, "empty k range");
  std::vector<BoundsReport> out;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const auto split = best_integer_split(k);
    const auto lb = lower_bound(k);
    out.push_back({k, split.m, split.n, split.value, lb, upper_bound(k), Rational(split.value) >= lb});
  }
  return out;
}

}  // namespace cartan
