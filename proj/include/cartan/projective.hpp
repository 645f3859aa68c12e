#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "cartan/combinatorics.hpp"
#include "cartan/error.hpp"
#include "cartan/linalg.hpp"
#include "cartan/matrix.hpp"
#include "cartan/rational.hpp"

namespace cartan {

/// A point of RP^{n-1} in homogeneous coordinates, normalized so that the
/// first nonzero coordinate is 1.
class ProjPoint {
 public:
  explicit ProjPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
    auto it = std::find_if(coords_.begin(), coords_.end(), [](const Rational& x) { return !x.is_zero(); });
    if (it == coords_.end()) throw Error(Errc::ZeroVector, "homogeneous coordinates are all zero");
    const Rational lead = *it;
    for (auto& x : coords_) x /= lead;
  }
  ProjPoint(std::initializer_list<Rational> coords) : ProjPoint(std::vector<Rational>(coords)) {}

  /// Homogeneous coordinate count n (the point lives in RP^{n-1}).
  std::size_t size() const { return coords_.size(); }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  /// For RP^1: z with [x1:x2] = [1:z]; none for the point at infinity [0:1].
  std::optional<Rational> affine_value() const {
    if (coords_.size() != 2) throw Error(Errc::DimensionMismatch, "affine value needs a point of RP^1");
    if (coords_[0].is_zero()) return std::nullopt;
    return coords_[1];
  }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
    return std::lexicographical_compare_three_way(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                                  b.coords_.end());
  }

 private:
  std::vector<Rational> coords_;
};

/// [1 : z] in RP^1.
inline ProjPoint affine_point(const Rational& z) { return ProjPoint({Rational(1), z}); }

/// Invertible linear map acting on RP^{n-1}, scaled so the first nonzero
/// entry (row-major) is 1.
class ProjTransform {
 public:
  explicit ProjTransform(QMatrix m) : m_(std::move(m)) {
    if (!m_.is_square()) throw Error(Errc::NonSquare, "projective transform must be square");
    if (det(m_).is_zero()) throw Error(Errc::Singular, "projective transform must be invertible");
    const auto& d = m_.data();
    auto it = std::find_if(d.begin(), d.end(), [](const Rational& x) { return !x.is_zero(); });
    m_ *= Rational(1) / *it;
  }

  static ProjTransform identity(std::size_t n) { return ProjTransform(QMatrix::identity(n)); }

  const QMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

  ProjPoint operator()(const ProjPoint& p) const {
    if (p.size() != dim()) throw Error(Errc::DimensionMismatch, "point and transform dimensions differ");
    return ProjPoint(m_.apply(p.coords()));
  }

  ProjTransform inverse() const { return ProjTransform(cartan::inverse(m_)); }

  friend ProjTransform operator*(const ProjTransform& a, const ProjTransform& b) {
    return ProjTransform(a.m_ * b.m_);
  }
  friend bool operator==(const ProjTransform&, const ProjTransform&) = default;

 private:
  QMatrix m_;
};

inline std::size_t common_dim(std::span<const ProjPoint> points) {
  if (points.empty()) throw Error(Errc::EmptyInput, "no points");
  const std::size_t n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw Error(Errc::DimensionMismatch, "points live in different projective spaces");
  return n;
}

/// True iff every n of the points have linearly independent coordinate
/// vectors, i.e. every n+1 of them form a projective basis.
inline bool general_position(std::span<const ProjPoint> points) {
  const std::size_t n = common_dim(points);
  if (points.size() < n + 1) throw Error(Errc::TooFewPoints, "general position needs at least n+1 points");
  return for_each_subset(points.size(), n, [&](std::span<const std::size_t> idx) {
    QMatrix m(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) m(r, c) = points[idx[c]][r];
    return !det(m).is_zero();
  });
}

/// The unique Q sending the first n points to [e_1],...,[e_n] and the last
/// to [e_1 + ... + e_n].
inline ProjTransform basis_transform(std::span<const ProjPoint> ordered) {
  if (ordered.empty()) throw Error(Errc::EmptyInput, "no points");
  const std::size_t n = common_dim(ordered);
  if (ordered.size() != n + 1) throw Error(Errc::DimensionMismatch, "a projective basis of RP^{n-1} has n+1 points");
  QMatrix cols(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) cols(r, c) = ordered[c][r];
  if (det(cols).is_zero()) throw Error(Errc::DegenerateBasis, "first n points are dependent");
  // Q^{-1} = cols * diag(lambda) with cols * lambda = last point.
  auto lambda = solve(cols, ordered[n].coords());
  for (const auto& l : *lambda)
    if (l.is_zero()) throw Error(Errc::DegenerateBasis, "last point lies on a coordinate hyperplane of the others");
  QMatrix qinv = cols * QMatrix::diagonal(*lambda);
  return ProjTransform(inverse(qinv));
}

/// The point [phi] of the dual projective space for the hyperplane ker(phi).
inline ProjPoint dualize(std::span<const Rational> hyperplane_coeffs) {
  return ProjPoint(std::vector<Rational>(hyperplane_coeffs.begin(), hyperplane_coeffs.end()));
}

}  // namespace cartan
