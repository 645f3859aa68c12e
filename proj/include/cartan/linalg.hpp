#pragma once

// Exact linear algebra over Q. Every routine clears denominators row by row
// and runs fraction-free (Bareiss) elimination on integers, so no floating
// point is involved and all divisions inside the elimination are exact.

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

#include "cartan/combinatorics.hpp"
#include "cartan/error.hpp"
#include "cartan/matrix.hpp"
#include "cartan/rational.hpp"

namespace cartan {

namespace detail {

using IntRows = std::vector<std::vector<mpz_class>>;

struct Echelon {
  IntRows rows;                    // fraction-free row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  int swap_sign = 1;
};

/// Scales row i by the lcm of its denominators; returns the integer rows and
/// writes the scale factors to `scales`.
inline IntRows clear_denominators(const QMatrix& m, std::vector<mpz_class>* scales = nullptr) {
  IntRows out(m.rows(), std::vector<mpz_class>(m.cols()));
  if (scales) scales->assign(m.rows(), mpz_class(1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).value().get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m(i, j).value();
      out[i][j] = q.get_num() * (l / q.get_den());
    }
    if (scales) (*scales)[i] = l;
  }
  return out;
}

/// Fraction-free forward elimination. Columns without a pivot are skipped;
/// entries stay integral because each one is a minor of the input.
inline Echelon bareiss(IntRows z, std::size_t pivot_col_limit) {
  Echelon e;
  const std::size_t nrows = z.size();
  const std::size_t ncols = nrows == 0 ? 0 : z.front().size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_col_limit && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && z[p][c] == 0) ++p;
    if (p == nrows) continue;
    if (p != r) {
      std::swap(z[p], z[r]);
      e.swap_sign = -e.swap_sign;
    }
    const mpz_class& piv = z[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j) {
        mpz_class t = piv * z[i][j] - z[i][c] * z[r][j];
        mpz_divexact(z[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      z[i][c] = 0;
    }
    prev = piv;
    e.pivots.push_back(c);
    ++r;
  }
  e.rows = std::move(z);
  return e;
}

/// Back substitution on an echelon form of [A | B] with `ncols_a` columns
/// in A; free variables are set to zero. Returns none if some right-hand
/// column is inconsistent.
inline std::optional<QMatrix> back_substitute(const Echelon& e, std::size_t ncols_a) {
  const std::size_t nrhs = e.rows.empty() ? 0 : e.rows.front().size() - ncols_a;
  const std::size_t rank = e.pivots.size();
  for (std::size_t i = rank; i < e.rows.size(); ++i)
    for (std::size_t j = ncols_a; j < ncols_a + nrhs; ++j)
      if (e.rows[i][j] != 0) return std::nullopt;
  QMatrix x(ncols_a, nrhs);
  for (std::size_t k = 0; k < nrhs; ++k) {
    for (std::size_t r = rank; r-- > 0;) {
      const std::size_t pc = e.pivots[r];
      mpq_class acc(e.rows[r][ncols_a + k]);
      for (std::size_t j = pc + 1; j < ncols_a; ++j) {
        if (e.rows[r][j] == 0) continue;
        acc -= mpq_class(e.rows[r][j]) * x(j, k).value();
      }
      acc /= mpq_class(e.rows[r][pc]);
      x(pc, k) = Rational(acc);
    }
  }
  return x;
}

inline QMatrix hconcat(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::DimensionMismatch, "row counts differ");
  QMatrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

}  // namespace detail

inline std::size_t rank(const QMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return detail::bareiss(detail::clear_denominators(m), m.cols()).pivots.size();
}

inline Rational det(const QMatrix& m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  std::vector<mpz_class> scales;
  auto e = detail::bareiss(detail::clear_denominators(m, &scales), n);
  if (e.pivots.size() < n) return Rational(0);
  mpz_class scale = 1;
  for (const auto& s : scales) scale *= s;
  return Rational(e.rows[n - 1][n - 1] * e.swap_sign, scale);
}

/// Some x with A x = b, or none if the system is inconsistent.
inline std::optional<std::vector<Rational>> solve(const QMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw Error(Errc::DimensionMismatch, "rhs length != rows");
  if (a.rows() == 0) return std::vector<Rational>(a.cols(), Rational(0));
  QMatrix rhs(a.rows(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  auto e = detail::bareiss(detail::clear_denominators(detail::hconcat(a, rhs)), a.cols());
  auto x = detail::back_substitute(e, a.cols());
  if (!x) return std::nullopt;
  return x->col_vector(0);
}

inline QMatrix inverse(const QMatrix& m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  auto e = detail::bareiss(detail::clear_denominators(detail::hconcat(m, QMatrix::identity(n))), n);
  if (e.pivots.size() < n) throw Error(Errc::Singular, "matrix is singular");
  return *detail::back_substitute(e, n);
}

/// Dimension of the affine hull: rank of the differences p_i - p_0.
inline std::size_t affine_hull_dim(const std::vector<std::vector<Rational>>& points) {
  if (points.empty()) throw Error(Errc::EmptyInput, "affine hull of no points");
  const std::size_t d = points.front().size();
  QMatrix diffs(points.size() - 1, d);
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != d) throw Error(Errc::DimensionMismatch, "points of different length");
    for (std::size_t j = 0; j < d; ++j) diffs(i - 1, j) = points[i][j] - points[0][j];
  }
  return rank(diffs);
}

}  // namespace cartan
