#pragma once

// The unipotent abelian groups L_T = { rho_T(a, b) } inside SL_{m+n+1}:
// identity diagonal, upper-right (m+1) x n block whose row j is a_j * T_j
// (j < m) and whose last row is b.

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "cartan/cross_ratio.hpp"
#include "cartan/error.hpp"
#include "cartan/linalg.hpp"
#include "cartan/matrix.hpp"
#include "cartan/projective.hpp"

namespace cartan {

/// The m x n matrix T defining L_T. Every row must be nonzero.
class SeedMatrix {
 public:
  explicit SeedMatrix(QMatrix t) : t_(std::move(t)) {
    if (t_.rows() == 0 || t_.cols() == 0) throw Error(Errc::InvalidShape, "seed matrix must be nonempty");
    for (std::size_t j = 0; j < t_.rows(); ++j) {
      const auto row = t_.row(j);
      if (std::all_of(row.begin(), row.end(), [](const Rational& x) { return x.is_zero(); }))
        throw Error(Errc::ZeroRow, "row " + std::to_string(j + 1) + " of T is zero");
    }
    generic_ = t_.rows() >= t_.cols() && for_each_subset(t_.rows(), t_.cols(), [&](std::span<const std::size_t> idx) {
                 QMatrix sub(idx.size(), t_.cols());
                 for (std::size_t r = 0; r < idx.size(); ++r)
                   for (std::size_t c = 0; c < t_.cols(); ++c) sub(r, c) = t_(idx[r], c);
                 return !det(sub).is_zero();
               });
  }

  std::size_t m() const { return t_.rows(); }
  std::size_t n() const { return t_.cols(); }
  /// Size m+n+1 of the ambient SL.
  std::size_t ambient() const { return m() + n() + 1; }
  const QMatrix& matrix() const { return t_; }
  bool generic() const { return generic_; }

  friend bool operator==(const SeedMatrix& a, const SeedMatrix& b) { return a.t_ == b.t_; }

 private:
  QMatrix t_;
  bool generic_ = false;
};

struct GroupElementParams {
  std::vector<Rational> a;  // length m
  std::vector<Rational> b;  // length n

  static GroupElementParams zero(const SeedMatrix& t) {
    return {std::vector<Rational>(t.m(), Rational(0)), std::vector<Rational>(t.n(), Rational(0))};
  }
  /// Flattened (a_1..a_m, b_1..b_n).
  std::vector<Rational> flat() const {
    std::vector<Rational> v(a);
    v.insert(v.end(), b.begin(), b.end());
    return v;
  }
  friend GroupElementParams operator+(const GroupElementParams& p, const GroupElementParams& q) {
    if (p.a.size() != q.a.size() || p.b.size() != q.b.size())
      throw Error(Errc::DimensionMismatch, "parameter lengths differ");
    GroupElementParams s = p;
    for (std::size_t i = 0; i < s.a.size(); ++i) s.a[i] += q.a[i];
    for (std::size_t i = 0; i < s.b.size(); ++i) s.b[i] += q.b[i];
    return s;
  }
  friend bool operator==(const GroupElementParams&, const GroupElementParams&) = default;
};

inline bool is_generic(const SeedMatrix& t) {
  if (t.m() < t.n()) throw Error(Errc::TooFewRows, "genericity needs m >= n");
  return t.generic();
}

inline void check_params(const SeedMatrix& t, const GroupElementParams& p) {
  if (p.a.size() != t.m() || p.b.size() != t.n())
    throw Error(Errc::DimensionMismatch, "parameters do not match the seed shape");
}

inline QMatrix rho(const SeedMatrix& t, const GroupElementParams& p) {
  check_params(t, p);
  const std::size_t m = t.m(), n = t.n();
  QMatrix g = QMatrix::identity(t.ambient());
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) g(j, m + 1 + i) = t.matrix()(j, i) * p.a[j];
  for (std::size_t i = 0; i < n; ++i) g(m, m + 1 + i) = p.b[i];
  return g;
}

/// phi_j(w) = sum_i T_{ji} w_i, with j zero-based.
inline Rational phi(const SeedMatrix& t, std::size_t j, std::span<const Rational> w) {
  if (j >= t.m()) throw Error(Errc::IndexOutOfRange, "row index " + std::to_string(j) + " out of range");
  if (w.size() != t.n()) throw Error(Errc::DimensionMismatch, "functional argument has wrong length");
  Rational s(0);
  for (std::size_t i = 0; i < t.n(); ++i) s += t.matrix()(j, i) * w[i];
  return s;
}

/// Last n homogeneous coordinates of a point of RP^{m+n}.
inline std::vector<Rational> tail_of(const SeedMatrix& t, const ProjPoint& x) {
  if (x.size() != t.ambient()) throw Error(Errc::DimensionMismatch, "point is not in RP^{m+n}");
  return {x.coords().begin() + static_cast<std::ptrdiff_t>(t.m() + 1), x.coords().end()};
}

inline ProjPoint group_action(const SeedMatrix& t, const GroupElementParams& p, const ProjPoint& x) {
  check_params(t, p);
  const auto w = tail_of(t, x);
  std::vector<Rational> y = x.coords();
  for (std::size_t j = 0; j < t.m(); ++j) y[j] += p.a[j] * phi(t, j, w);
  for (std::size_t i = 0; i < t.n(); ++i) y[t.m()] += p.b[i] * w[i];
  return ProjPoint(std::move(y));
}

enum class OrbitKind { Fixed, Exceptional, Typical };

inline const char* orbit_kind_name(OrbitKind k) {
  switch (k) {
    case OrbitKind::Fixed: return "fixed";
    case OrbitKind::Exceptional: return "exceptional";
    case OrbitKind::Typical: return "typical";
  }
  return "?";
}

struct OrbitClass {
  OrbitKind kind;
  std::size_t dim;
  std::vector<std::size_t> vanishing;  // zero-based rows j with phi_j(tail) = 0
};

/// Orbit-closure dimension of x under L_T. Off P(U) the orbit is the affine
/// space x + span{e_j : phi_j(tail) != 0} + span{e_{m+1}}, so the dimension
/// is 1 + #{j : phi_j(tail) != 0}; the maximum m+1 is "typical".
inline OrbitClass orbit_dimension(const SeedMatrix& t, const ProjPoint& x) {
  const auto w = tail_of(t, x);
  if (std::all_of(w.begin(), w.end(), [](const Rational& r) { return r.is_zero(); }))
    return {OrbitKind::Fixed, 0, {}};
  OrbitClass c{OrbitKind::Typical, 1, {}};
  for (std::size_t j = 0; j < t.m(); ++j) {
    if (phi(t, j, w).is_zero())
      c.vanishing.push_back(j);
    else
      ++c.dim;
  }
  if (c.dim < t.m() + 1) c.kind = OrbitKind::Exceptional;
  return c;
}

/// delta(T): the dual points [phi_j] of the exceptional hyperplanes ker phi_j.
inline AugmentedBasis exceptional_dual_basis(const SeedMatrix& t) {
  if (t.m() < t.n() + 2) throw Error(Errc::TooFewRows, "delta(T) needs m >= n+2");
  if (!t.generic()) throw Error(Errc::NotGeneric, "delta(T) needs a generic seed");
  std::vector<ProjPoint> pts;
  for (std::size_t j = 0; j < t.m(); ++j) pts.push_back(dualize(t.matrix().row(j)));
  return AugmentedBasis(std::move(pts));
}

inline SeedMatrix conjugate_seed(const SeedMatrix& t, const QMatrix& p) {
  if (!p.is_square() || p.rows() != t.n()) throw Error(Errc::DimensionMismatch, "P must be n x n");
  if (det(p).is_zero()) throw Error(Errc::Singular, "P must be invertible");
  return SeedMatrix(t.matrix() * p);
}

/// I_{m+1} ⊕ P^{-1}, which conjugates L_T onto L_{TP}.
inline QMatrix seed_conjugator(const SeedMatrix& t, const QMatrix& p) {
  if (det(p).is_zero()) throw Error(Errc::Singular, "P must be invertible");
  return direct_sum(QMatrix::identity(t.m() + 1), inverse(p));
}

/// Parameters p with g = rho_S(p), or none if g is not in L_S.
inline std::optional<GroupElementParams> membership(const SeedMatrix& s, const QMatrix& g) {
  const std::size_t m = s.m(), n = s.n(), k = s.ambient();
  if (g.rows() != k || g.cols() != k) return std::nullopt;
  GroupElementParams p = GroupElementParams::zero(s);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t piv = 0;
    while (s.matrix()(j, piv).is_zero()) ++piv;
    p.a[j] = g(j, m + 1 + piv) / s.matrix()(j, piv);
  }
  for (std::size_t i = 0; i < n; ++i) p.b[i] = g(m, m + 1 + i);
  if (rho(s, p) != g) return std::nullopt;
  return p;
}

struct ConjugacyWitness {
  QMatrix conjugator;            // W in SL_{m+n+1} with W L_T W^{-1} = L_S
  ProjTransform dual_map;        // Q on the dual space with Q(delta(T)) = delta(S)
  std::vector<std::size_t> row_map;  // row j of T corresponds to row row_map[j] of S
};

/// Checks W rho_T(e_i) W^{-1} in L_S for every basis parameter e_i; since both
/// groups are (m+n)-dimensional images of linear maps, this gives W L_T W^{-1} = L_S
/// as soon as the images of the e_i are independent, which holds because W is invertible.
inline bool verify_conjugator(const SeedMatrix& t, const SeedMatrix& s, const QMatrix& w) {
  const auto winv = inverse(w);
  const std::size_t d = t.m() + t.n();
  for (std::size_t i = 0; i < d; ++i) {
    auto p = GroupElementParams::zero(t);
    if (i < t.m())
      p.a[i] = 1;
    else
      p.b[i - t.m()] = 1;
    if (!membership(s, w * rho(t, p) * winv)) return false;
  }
  return true;
}

/// Decides conjugacy of L_T and L_S by projective equivalence of delta(T) and
/// delta(S). The witness is (Pi ⊕ u) ⊕ P^{-1}: Pi permutes the first m
/// coordinates to match rows, P = Q^t comes from the dual map, and u puts
/// the determinant at exactly 1. The witness is verified before returning.
inline std::optional<ConjugacyWitness> are_conjugate(const SeedMatrix& t, const SeedMatrix& s) {
  if (t.m() != s.m() || t.n() != s.n()) throw Error(Errc::ShapeMismatch, "seeds have different shapes");
  if (!t.generic() || !s.generic()) throw Error(Errc::NotGeneric, "conjugacy test needs generic seeds");
  const auto dt = exceptional_dual_basis(t);
  const auto ds = exceptional_dual_basis(s);
  auto q = projectively_equivalent(dt.points(), ds.points());
  if (!q) return std::nullopt;

  const std::size_t m = t.m();
  std::vector<std::size_t> row_map(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto img = (*q)(dt.points()[j]);
    const auto it = std::find(ds.points().begin(), ds.points().end(), img);
    row_map[j] = static_cast<std::size_t>(it - ds.points().begin());
  }
  const QMatrix p = q->matrix().transpose();
  QMatrix head(m + 1, m + 1);
  for (std::size_t j = 0; j < m; ++j) head(row_map[j], j) = 1;
  const Rational sign_pi = det(head.block(0, 0, m, m));
  head(m, m) = det(p) * sign_pi;
  QMatrix w = direct_sum(head, inverse(p));
  if (det(w) != Rational(1) || !verify_conjugator(t, s, w))
    throw Error(Errc::Singular, "internal: conjugator failed verification");
  return ConjugacyWitness{std::move(w), *q, std::move(row_map)};
}

// ---- the SL_7 family L_alpha ----------------------------------------------

inline void check_alpha(const Rational& alpha) {
  if (alpha == Rational(0) || alpha == Rational(1) || alpha == Rational(2))
    throw Error(Errc::DegenerateAlpha, "alpha must avoid {0, 1, 2}");
}

/// T = [[1,0],[1,1],[1,2],[1,alpha]], so L_T = L_alpha in SL_7.
inline SeedMatrix alpha_seed(const Rational& alpha) {
  check_alpha(alpha);
  return SeedMatrix(QMatrix{{1, 0}, {1, 1}, {1, 2}, {1, alpha}});
}

/// The six cross-ratio values of {[1:0],[1:1],[1:2],[1:alpha]}, deduplicated
/// and sorted, as points [1:z].
inline std::vector<ProjPoint> alpha_orbit(const Rational& alpha) {
  check_alpha(alpha);
  const Rational one(1), two(2);
  const Rational lam = two * (alpha - one) / alpha;
  const std::vector<Rational> values{lam,
                                     alpha / (two * (alpha - one)),
                                     alpha / (two - alpha),
                                     (two - alpha) / alpha,
                                     two * (alpha - one) / (alpha - two),
                                     (alpha - two) / (two * (alpha - one))};
  std::set<ProjPoint> pts;
  for (const auto& v : values) pts.insert(affine_point(v));
  return {pts.begin(), pts.end()};
}

/// All beta with L_beta conjugate to L_alpha: those whose cross-ratio value
/// 2(beta-1)/beta lies in alpha_orbit(alpha). Inverting mu = 2(beta-1)/beta
/// gives beta = 2/(2-mu); mu = 2 corresponds to no finite beta.
inline std::vector<Rational> conjugate_alphas(const Rational& alpha) {
  std::set<Rational> out;
  for (const auto& p : alpha_orbit(alpha)) {
    const Rational mu = *p.affine_value();
    if (mu == Rational(2)) continue;
    out.insert(Rational(2) / (Rational(2) - mu));
  }
  return {out.begin(), out.end()};
}

/// The point (head_1..head_5, t, -1) of RP^6. Its fiber coordinate t is
/// exceptional for L_alpha exactly when t is one of 0, 1, 2, alpha, and fiber t
/// is the hyperplane dual to [1:t].
inline ProjPoint alpha_fiber_point(const Rational& t, std::span<const Rational> head) {
  if (head.size() != 5) throw Error(Errc::DimensionMismatch, "L_alpha points have 5 head coordinates");
  std::vector<Rational> x(head.begin(), head.end());
  x.push_back(t);
  x.push_back(Rational(-1));
  return ProjPoint(std::move(x));
}

/// (I_n; 1...1; A): seeds whose delta(T) starts with the standard projective basis.
inline SeedMatrix normalized_slice_member(const QMatrix& a) {
  const std::size_t n = a.cols();
  QMatrix t(n + 1 + a.rows(), n);
  t.set_block(0, 0, QMatrix::identity(n));
  for (std::size_t i = 0; i < n; ++i) t(n, i) = 1;
  t.set_block(n + 1, 0, a);
  for (std::size_t j = 0; j < t.rows(); ++j) {
    const auto row = t.row(j);
    if (std::all_of(row.begin(), row.end(), [](const Rational& x) { return x.is_zero(); }))
      throw Error(Errc::NotGeneric, "slice member has a zero row");
  }
  SeedMatrix s(std::move(t));
  if (!s.generic()) throw Error(Errc::NotGeneric, "stacked seed is not generic");
  return s;
}

}  // namespace cartan
