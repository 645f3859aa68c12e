#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/projective.hpp"

namespace cartan {

/// m >= n+2 points of RP^{n-1} in general position.
class AugmentedBasis {
 public:
  explicit AugmentedBasis(std::vector<ProjPoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(Errc::NotAugmentedBasis, "empty point list");
    const std::size_t n = common_dim(points_);
    if (points_.size() < n + 2) throw Error(Errc::NotAugmentedBasis, "an augmented basis needs m >= n+2 points");
    if (!general_position(points_)) throw Error(Errc::NotAugmentedBasis, "points are not in general position");
  }

  const std::vector<ProjPoint>& points() const { return points_; }
  std::size_t m() const { return points_.size(); }
  std::size_t n() const { return points_.front().size(); }

 private:
  std::vector<ProjPoint> points_;
};

inline bool is_augmented_basis(std::span<const ProjPoint> points) {
  try {
    AugmentedBasis(std::vector<ProjPoint>(points.begin(), points.end()));
    return true;
  } catch (const Error&) {
    return false;
  }
}

struct CrossRatioTuple {
  std::vector<ProjPoint> entries;

  friend bool operator==(const CrossRatioTuple&, const CrossRatioTuple&) = default;
  friend auto operator<=>(const CrossRatioTuple& a, const CrossRatioTuple& b) {
    return std::lexicographical_compare_three_way(a.entries.begin(), a.entries.end(), b.entries.begin(),
                                                  b.entries.end());
  }
};

/// The set of ordered cross ratios over all orderings, kept sorted and
/// duplicate-free so that equality of sets is equality of vectors.
struct UnorderedCrossRatio {
  std::vector<CrossRatioTuple> tuples;

  std::size_t size() const { return tuples.size(); }
  bool contains(const CrossRatioTuple& t) const { return std::binary_search(tuples.begin(), tuples.end(), t); }
  friend bool operator==(const UnorderedCrossRatio&, const UnorderedCrossRatio&) = default;
};

inline constexpr std::size_t kDefaultCrossRatioCap = 8;

/// (Q(y_{n+2}), ..., Q(y_m)) where Q normalizes the first n+1 points to the
/// standard projective basis.
inline CrossRatioTuple ordered_cross_ratio(std::span<const ProjPoint> points) {
  AugmentedBasis basis(std::vector<ProjPoint>(points.begin(), points.end()));
  const std::size_t n = basis.n();
  const auto q = basis_transform(points.first(n + 1));
  CrossRatioTuple t;
  for (std::size_t i = n + 1; i < points.size(); ++i) t.entries.push_back(q(points[i]));
  return t;
}

/// The full S_m orbit of ordered cross ratios. The enumeration is factored
/// as (ordered first n+1 points) x (every ordering of the rest) so Q is
/// built once per prefix; the resulting set is the same.
inline UnorderedCrossRatio unordered_cross_ratio(std::span<const ProjPoint> points,
                                                 std::size_t cap = kDefaultCrossRatioCap) {
  AugmentedBasis basis(std::vector<ProjPoint>(points.begin(), points.end()));
  const std::size_t m = basis.m();
  const std::size_t n = basis.n();
  if (m > cap) throw Error(Errc::CapExceeded, "m = " + std::to_string(m) + " exceeds the S_m enumeration cap");

  std::vector<CrossRatioTuple> all;
  std::vector<ProjPoint> prefix;
  for_each_arrangement(m, n + 1, [&](std::span<const std::size_t> idx) {
    prefix.clear();
    std::vector<bool> in_prefix(m, false);
    for (auto i : idx) {
      prefix.push_back(points[i]);
      in_prefix[i] = true;
    }
    const auto q = basis_transform(prefix);
    std::vector<ProjPoint> images;
    for (std::size_t i = 0; i < m; ++i)
      if (!in_prefix[i]) images.push_back(q(points[i]));
    std::vector<std::size_t> order(images.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      CrossRatioTuple t;
      for (auto o : order) t.entries.push_back(images[o]);
      all.push_back(std::move(t));
    } while (std::next_permutation(order.begin(), order.end()));
    return true;
  });
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return UnorderedCrossRatio{std::move(all)};
}

inline std::vector<ProjPoint> sorted_points(std::span<const ProjPoint> pts) {
  std::vector<ProjPoint> out(pts.begin(), pts.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Some Q with Q(A) = B as sets, or none. Searches over the images of the
/// first n+1 points of A (injective ordered choices in B) rather than over
/// all of S_m; the first witness in lexicographic index order is returned.
inline std::optional<ProjTransform> projectively_equivalent(std::span<const ProjPoint> a,
                                                            std::span<const ProjPoint> b) {
  if (a.size() != b.size()) throw Error(Errc::SizeMismatch, "point sets of different size");
  AugmentedBasis ba(std::vector<ProjPoint>(a.begin(), a.end()));
  AugmentedBasis bb(std::vector<ProjPoint>(b.begin(), b.end()));
  if (ba.n() != bb.n()) throw Error(Errc::SizeMismatch, "point sets live in different projective spaces");
  const std::size_t n = ba.n();
  const auto qa = basis_transform(a.first(n + 1));
  const auto target = sorted_points(b);

  std::optional<ProjTransform> found;
  std::vector<ProjPoint> prefix;
  for_each_arrangement(b.size(), n + 1, [&](std::span<const std::size_t> idx) {
    prefix.clear();
    for (auto i : idx) prefix.push_back(b[i]);
    const auto q = basis_transform(prefix).inverse() * qa;
    std::vector<ProjPoint> image;
    image.reserve(a.size());
    for (const auto& p : a) image.push_back(q(p));
    std::sort(image.begin(), image.end());
    if (image == target) {
      found = q;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace cartan
