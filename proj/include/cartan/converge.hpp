#pragma once

// L_T as a limit of conjugates of the positive diagonal group: for each r,
// pick diag(x) in C so that P_r^{-1} diag(x) P_r approaches rho_T(p).
//
// All x_i are affine in t = x_{m+1}:
//   x_{m+1+i} = t - b_i / r^2,   x_j = t + a_j / r - b_piv / r^2   (j <= m),
// and t is the unique root above max(-c_i) of prod(t + c_i) = 1.

#include <algorithm>
#include <cmath>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/limit_group.hpp"
#include "cartan/linalg.hpp"
#include "cartan/matrix.hpp"

namespace cartan {

inline void check_r(const Rational& r) {
  if (r.sign() <= 0) throw Error(Errc::NonpositiveR, "r must be positive");
}

/// Identity plus T r in the upper-right block rows 1..m and r^2 along row m+1.
inline QMatrix build_Pr(const SeedMatrix& t, const Rational& r) {
  check_r(r);
  const std::size_t m = t.m(), n = t.n();
  QMatrix p = QMatrix::identity(t.ambient());
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) p(j, m + 1 + i) = t.matrix()(j, i) * r;
  for (std::size_t i = 0; i < n; ++i) p(m, m + 1 + i) = r * r;
  return p;
}

/// First column of T with no zero entry; ZeroFirstColumn if there is none.
inline std::size_t pivot_column(const SeedMatrix& t) {
  for (std::size_t c = 0; c < t.n(); ++c) {
    bool ok = true;
    for (std::size_t j = 0; j < t.m(); ++j) ok = ok && !t.matrix()(j, c).is_zero();
    if (ok) return c;
  }
  throw Error(Errc::ZeroFirstColumn, "no column of T is free of zeros");
}

struct DiagonalSolution {
  Rational r;
  std::size_t pivot_col = 0;
  std::vector<Rational> offsets;  // c_i, exact: x_i = t + c_i
  double t = 1.0;                 // x_{m+1}
  std::vector<double> x;
};

namespace detail {

inline double product_minus_one(double t, const std::vector<double>& c) {
  double prod = 1.0;
  for (double ci : c) prod *= (t + ci);
  return prod - 1.0;
}

}  // namespace detail

/// Solves prod(t + c_i) = 1 on (max(-c_i), inf): bisection on
/// [max(-c_i), 2 + sum|c_i|] to 1e-14 relative width, then one Newton step.
inline double solve_unit_product(const std::vector<double>& c) {
  double lo = -c.front(), sum_abs = 0.0;
  for (double ci : c) {
    lo = std::max(lo, -ci);
    sum_abs += std::abs(ci);
  }
  double hi = 2.0 + sum_abs;
  if (!std::isfinite(lo) || !std::isfinite(hi) || detail::product_minus_one(hi, c) < 0.0)
    throw Error(Errc::NoPositiveRoot, "no bracketed root for the determinant condition");
  while (hi - lo > 1e-14 * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (detail::product_minus_one(mid, c) < 0.0 ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  double prod = 1.0, dlog = 0.0;
  for (double ci : c) {
    prod *= (t + ci);
    dlog += 1.0 / (t + ci);
  }
  const double deriv = prod * dlog;
  if (std::isfinite(deriv) && deriv > 0.0) {
    const double polished = t - (prod - 1.0) / deriv;
    if (polished >= lo && polished <= hi &&
        std::abs(detail::product_minus_one(polished, c)) <= std::abs(prod - 1.0))
      t = polished;
  }
  return t;
}

inline DiagonalSolution diagonal_for_target(const SeedMatrix& t, const GroupElementParams& p, const Rational& r) {
  check_r(r);
  check_params(t, p);
  const std::size_t m = t.m(), n = t.n();
  DiagonalSolution sol;
  sol.r = r;
  sol.pivot_col = pivot_column(t);
  const Rational r2 = r * r;
  sol.offsets.resize(t.ambient());
  for (std::size_t j = 0; j < m; ++j) sol.offsets[j] = p.a[j] / r - p.b[sol.pivot_col] / r2;
  sol.offsets[m] = Rational(0);
  for (std::size_t i = 0; i < n; ++i) sol.offsets[m + 1 + i] = -p.b[i] / r2;

  std::vector<double> c;
  c.reserve(sol.offsets.size());
  for (const auto& o : sol.offsets) c.push_back(o.to_double());
  sol.t = solve_unit_product(c);
  sol.x.reserve(c.size());
  for (double ci : c) {
    const double xi = sol.t + ci;
    if (!(xi > 0.0)) throw Error(Errc::NoPositiveRoot, "diagonal entry is not positive");
    sol.x.push_back(xi);
  }
  return sol;
}

/// P_r^{-1} diag(x) P_r. With P_r = I + N and N^2 = 0 this is
/// diag(x) + diag(x) N - N diag(x), so the off-diagonal entries are
/// N_{jc} (x_j - x_c). Those differences are differences of the exact
/// offsets (t cancels), so they are formed exactly and rounded once.
inline RMatrix conjugated_element(const SeedMatrix& t, const DiagonalSolution& sol) {
  const QMatrix n_part = build_Pr(t, sol.r) - QMatrix::identity(t.ambient());
  RMatrix g(t.ambient(), t.ambient());
  for (std::size_t i = 0; i < t.ambient(); ++i) g(i, i) = sol.x[i];
  for (std::size_t j = 0; j <= t.m(); ++j)
    for (std::size_t c = t.m() + 1; c < t.ambient(); ++c)
      g(j, c) = (n_part(j, c) * (sol.offsets[j] - sol.offsets[c])).to_double();
  return g;
}

inline RMatrix conjugated_element(const SeedMatrix& t, const GroupElementParams& p, const Rational& r) {
  return conjugated_element(t, diagonal_for_target(t, p, r));
}

inline double max_entry_distance(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

struct ConvergenceTrace {
  std::vector<Rational> r_values;
  std::vector<double> distances;
  std::vector<std::vector<double>> diag_entries;
  std::vector<std::size_t> pivot_cols;
};

inline ConvergenceTrace convergence_report(const SeedMatrix& t, const GroupElementParams& p,
                                           const std::vector<Rational>& r_schedule) {
  ConvergenceTrace trace;
  const RMatrix target = to_double(rho(t, p));
  for (std::size_t k = 0; k < r_schedule.size(); ++k) {
    if (k > 0 && !(r_schedule[k - 1] < r_schedule[k]))
      throw Error(Errc::NonpositiveR, "r schedule must be strictly increasing");
    const auto sol = diagonal_for_target(t, p, r_schedule[k]);
    trace.r_values.push_back(r_schedule[k]);
    trace.distances.push_back(max_entry_distance(conjugated_element(t, sol), target));
    trace.diag_entries.push_back(sol.x);
    trace.pivot_cols.push_back(sol.pivot_col);
  }
  return trace;
}

}  // namespace cartan
