#include <gtest/gtest.h>

#include <algorithm>

#include "cartan/limit_group.hpp"
#include "cartan/random.hpp"

using namespace cartan;

namespace {

SeedMatrix seed(std::initializer_list<std::initializer_list<Rational>> rows) { return SeedMatrix(QMatrix(rows)); }

template <class F>
void expect_errc(Errc code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << errc_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

GroupElementParams random_params(SeededRng& rng, const SeedMatrix& t) {
  GroupElementParams p = GroupElementParams::zero(t);
  for (auto& x : p.a) x = rng.rational(6, 3);
  for (auto& x : p.b) x = rng.rational(6, 3);
  return p;
}

SeedMatrix random_generic(SeededRng& rng, std::size_t m, std::size_t n) {
  while (true) {
    const auto q = rng.int_matrix(m, n, 4);
    bool zero_row = false;
    for (std::size_t j = 0; j < m; ++j) {
      const auto r = q.row(j);
      zero_row |= std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.is_zero(); });
    }
    if (zero_row) continue;
    SeedMatrix t(q);
    if (t.generic()) return t;
  }
}

QMatrix random_invertible(SeededRng& rng, std::size_t n) {
  while (true) {
    auto q = rng.int_matrix(n, n, 3);
    if (!det(q).is_zero()) return q;
  }
}

ProjPoint random_point(SeededRng& rng, std::size_t k) {
  while (true) {
    std::vector<Rational> c(k);
    for (auto& x : c) x = rng.uniform_int(-3, 3);
    if (std::any_of(c.begin(), c.end(), [](const Rational& r) { return !r.is_zero(); })) return ProjPoint(c);
  }
}

// Orbit-closure dimension from 200 sampled orbit points. The last nonzero
// tail coordinate is invariant under L_T, so dividing by it is an affine chart
// containing the whole orbit.
std::size_t orbit_hull_oracle(const SeedMatrix& t, const ProjPoint& x) {
  const auto w = tail_of(t, x);
  std::size_t chart = x.size();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!w[i].is_zero()) chart = t.m() + 1 + i;
  if (chart == x.size()) return 0;
  std::vector<std::vector<Rational>> pts;
  SeededRng grid(2024);
  for (int s = 0; s < 200; ++s) {
    GroupElementParams p = GroupElementParams::zero(t);
    for (auto& v : p.a) v = grid.uniform_int(-3, 3);
    for (auto& v : p.b) v = grid.uniform_int(-3, 3);
    const auto y = group_action(t, p, x);
    std::vector<Rational> z;
    for (std::size_t i = 0; i < y.size(); ++i) z.push_back(y[i] / y[chart]);
    pts.push_back(std::move(z));
  }
  return affine_hull_dim(pts);
}

std::vector<Rational> alpha_grid() {
  // Includes members of the conjugacy class of 3 (3, -1, 8/5, 2/5, 6/7, 8/7)
  // and of 4 (4, -2, 4/3) so both verdicts occur.
  return {3, -1, Rational(8, 5), Rational(2, 5), Rational(6, 7), Rational(8, 7), 4, -2, Rational(4, 3), 5,
          -3, Rational(1, 2), Rational(3, 2), 6, Rational(-1, 2), Rational(5, 3), 7, Rational(2, 3), -5,
          Rational(10, 3)};
}

}  // namespace

TEST(SeedMatrix, Validation) {
  expect_errc(Errc::ZeroRow, [] { seed({{1, 0}, {0, 0}}); });
  expect_errc(Errc::InvalidShape, [] { SeedMatrix(QMatrix(0, 2)); });
}

TEST(IsGeneric, Examples) {
  EXPECT_TRUE(is_generic(seed({{1, 0}, {0, 1}, {1, 1}, {1, 2}})));
  EXPECT_FALSE(is_generic(seed({{1, 0}, {2, 0}, {0, 1}, {1, 1}})));
  EXPECT_TRUE(is_generic(alpha_seed(3)));
  expect_errc(Errc::TooFewRows, [] { is_generic(seed({{1, 2, 3}})); });
}

TEST(Rho, Examples) {
  const auto t = alpha_seed(3);
  EXPECT_EQ(rho(t, GroupElementParams::zero(t)), QMatrix::identity(7));

  const auto one = seed({{1}});
  const auto g = rho(one, {{2}, {3}});
  EXPECT_EQ(g, (QMatrix{{1, 0, 2}, {0, 1, 3}, {0, 0, 1}}));
}

TEST(Rho, AlphaSevenBySeven) {
  const Rational alpha(7, 2);
  const auto t = alpha_seed(alpha);
  const Rational a(2), b(-3), c(5), d(1, 2), e(4), f(-1);
  const auto g = rho(t, {{a, b, c, d}, {e, f}});
  QMatrix want = QMatrix::identity(7);
  want(0, 5) = a;
  want(1, 5) = b;
  want(1, 6) = b;
  want(2, 5) = c;
  want(2, 6) = Rational(2) * c;
  want(3, 5) = d;
  want(3, 6) = alpha * d;
  want(4, 5) = e;
  want(4, 6) = f;
  EXPECT_EQ(g, want);
  EXPECT_EQ(det(g), Rational(1));
}

TEST(Rho, Errors) {
  const auto t = alpha_seed(3);
  expect_errc(Errc::DimensionMismatch, [&] { rho(t, {{1, 2}, {3, 4}}); });
}

TEST(Rho, HomomorphismProperty) {
  SeededRng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t m = n + trial % 4;
    const auto t = random_generic(rng, m, n);
    const auto p = random_params(rng, t), q = random_params(rng, t);
    EXPECT_EQ(rho(t, p) * rho(t, q), rho(t, p + q));
    EXPECT_EQ(det(rho(t, p)), Rational(1));
    EXPECT_EQ(membership(t, rho(t, p)), p);
  }
}

TEST(Phi, Examples) {
  const auto t = seed({{1, 0}, {1, 1}, {1, 2}, {1, 3}});
  const std::vector<Rational> w{5, 7}, zero{0, 0}, ker{2, -1};
  EXPECT_EQ(phi(t, 0, w), Rational(5));
  EXPECT_EQ(phi(t, 1, zero), Rational(0));
  EXPECT_EQ(phi(t, 2, ker), Rational(0));
  expect_errc(Errc::IndexOutOfRange, [&] { phi(t, 4, w); });
  expect_errc(Errc::DimensionMismatch, [&] { phi(t, 0, std::vector<Rational>{1}); });
}

TEST(GroupAction, FixesProjectiveSubspaceU) {
  const auto t = alpha_seed(3);
  SeededRng rng(32);
  const ProjPoint x({1, -2, 3, 0, 5, 0, 0});
  for (int i = 0; i < 10; ++i) EXPECT_EQ(group_action(t, random_params(rng, t), x), x);
  const ProjPoint y({1, 2, 3, 4, 5, 6, 7});
  EXPECT_EQ(group_action(t, GroupElementParams::zero(t), y), y);
  expect_errc(Errc::DimensionMismatch, [&] { group_action(t, GroupElementParams::zero(t), ProjPoint({1, 2})); });
}

TEST(GroupAction, MatchesMatrixVectorProduct) {
  SeededRng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_generic(rng, 3 + trial % 3, 1 + trial % 3);
    const auto p = random_params(rng, t);
    const auto x = random_point(rng, t.ambient());
    EXPECT_EQ(group_action(t, p, x), ProjPoint(rho(t, p).apply(x.coords())));
  }
}

TEST(GroupAction, FixedSetIsExactlyPU) {
  SeededRng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = random_generic(rng, 4, 2);
    auto x = random_point(rng, t.ambient());
    if (trial % 2 == 0) {
      auto c = x.coords();
      c[5] = 0;
      c[6] = 0;
      if (std::all_of(c.begin(), c.end(), [](const Rational& r) { return r.is_zero(); })) c[0] = 1;
      x = ProjPoint(c);
    }
    bool fixed = true;
    for (int s = 0; s < 8; ++s) fixed &= group_action(t, random_params(rng, t), x) == x;
    const auto w = tail_of(t, x);
    const bool in_u = std::all_of(w.begin(), w.end(), [](const Rational& r) { return r.is_zero(); });
    EXPECT_EQ(fixed, in_u);
  }
}

TEST(OrbitDimension, AlphaFiberCases) {
  const auto t = alpha_seed(3);
  const std::vector<Rational> head{1, 2, 3, 4, 5};
  for (int tv = -4; tv <= 6; ++tv) {
    const auto c = orbit_dimension(t, alpha_fiber_point(tv, head));
    if (tv == 0 || tv == 1 || tv == 2 || tv == 3) {
      EXPECT_EQ(c.kind, OrbitKind::Exceptional);
      EXPECT_EQ(c.dim, 4u);
      EXPECT_EQ(c.vanishing.size(), 1u);
    } else {
      EXPECT_EQ(c.kind, OrbitKind::Typical);
      EXPECT_EQ(c.dim, 5u);
      EXPECT_TRUE(c.vanishing.empty());
    }
  }
  const auto two = orbit_dimension(t, alpha_fiber_point(2, head));
  EXPECT_EQ(two.vanishing, (std::vector<std::size_t>{2}));
  const auto fixed = orbit_dimension(t, ProjPoint({1, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(fixed.kind, OrbitKind::Fixed);
  EXPECT_EQ(fixed.dim, 0u);
}

TEST(OrbitDimension, AffineHullOracleOnAlphaFibers) {
  const auto t = alpha_seed(3);
  const std::vector<Rational> head{0, 1, -1, 2, 3};
  for (int tv = -2; tv <= 5; ++tv) {
    const auto x = alpha_fiber_point(tv, head);
    EXPECT_EQ(orbit_dimension(t, x).dim, orbit_hull_oracle(t, x)) << "t = " << tv;
  }
}

TEST(OrbitDimension, AffineHullOracleOnRandomPairs) {
  SeededRng rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t m = n + rng.uniform_int(0, static_cast<std::int64_t>(6 - n));
    const auto t = random_generic(rng, m, n);
    auto x = random_point(rng, t.ambient());
    if (trial % 5 == 0 && n >= 2) {
      // land on an exceptional hyperplane: tail in ker phi_0
      auto c = x.coords();
      c[m + 1] = t.matrix()(0, 1);
      c[m + 2] = -t.matrix()(0, 0);
      for (std::size_t i = 2; i < n; ++i) c[m + 1 + i] = 0;
      x = ProjPoint(c);
    }
    const auto cls = orbit_dimension(t, x);
    EXPECT_EQ(cls.dim, orbit_hull_oracle(t, x));
    if (cls.kind == OrbitKind::Typical) {
      EXPECT_EQ(cls.dim, m + 1);
    } else if (cls.kind == OrbitKind::Exceptional) {
      EXPECT_LT(cls.dim, m + 1);
    }
  }
}

TEST(OrbitDimension, GenericLowerBound) {
  SeededRng rng(36);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto t = random_generic(rng, n + 3, n);
    // Force n-1 vanishing functionals: tail orthogonal to rows 0..n-2.
    std::vector<Rational> tail(n);
    const QMatrix sub = t.matrix().block(0, 0, n - 1, n);
    // kernel vector of an (n-1) x n full-rank matrix by signed maximal minors
    for (std::size_t i = 0; i < n; ++i) {
      QMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0; r < n - 1; ++r)
        for (std::size_t c = 0, cc = 0; c < n; ++c)
          if (c != i) minor(r, cc++) = sub(r, c);
      tail[i] = (i % 2 == 0 ? Rational(1) : Rational(-1)) * det(minor);
    }
    std::vector<Rational> x(t.m() + 1, Rational(trial % 3));
    x.insert(x.end(), tail.begin(), tail.end());
    const auto cls = orbit_dimension(t, ProjPoint(x));
    EXPECT_EQ(cls.vanishing.size(), n - 1);
    EXPECT_GE(cls.dim, t.m() + 1 - (n - 1));
  }
}

TEST(ExceptionalDualBasis, Examples) {
  const auto d = exceptional_dual_basis(seed({{1, 0}, {1, 1}, {1, 2}, {1, 3}}));
  EXPECT_EQ(d.points(), (std::vector<ProjPoint>{affine_point(0), affine_point(1), affine_point(2), affine_point(3)}));
  const auto d2 = exceptional_dual_basis(seed({{1, 0}, {2, 4}, {0, 1}, {1, 1}}));
  EXPECT_EQ(d2.points()[1], affine_point(2));
  expect_errc(Errc::TooFewRows, [] { exceptional_dual_basis(seed({{1, 0}, {0, 1}, {1, 1}})); });
  expect_errc(Errc::NotGeneric, [] { exceptional_dual_basis(seed({{1, 0}, {2, 0}, {0, 1}, {1, 1}})); });
}

TEST(ExceptionalDualBasis, ColumnChangeIsProjectiveEquivalence) {
  SeededRng rng(37);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto t = random_generic(rng, n + 2, n);
    const auto p = random_invertible(rng, n);
    const auto dt = exceptional_dual_basis(t);
    const auto ds = exceptional_dual_basis(conjugate_seed(t, p));
    // rows transform by w -> w P, i.e. the dual map with matrix P^t
    const ProjTransform q(p.transpose());
    for (std::size_t j = 0; j < t.m(); ++j) EXPECT_EQ(q(dt.points()[j]), ds.points()[j]);
    EXPECT_TRUE(projectively_equivalent(dt.points(), ds.points()).has_value());
  }
}

TEST(ConjugateSeed, Examples) {
  const auto t = seed({{1, 0}, {1, 1}, {1, 2}, {1, 3}});
  EXPECT_EQ(conjugate_seed(t, QMatrix::identity(2)), t);
  EXPECT_EQ(conjugate_seed(t, QMatrix{{1, 0}, {0, 2}}), seed({{1, 0}, {1, 2}, {1, 4}, {1, 6}}));
  expect_errc(Errc::Singular, [&] { conjugate_seed(t, QMatrix{{1, 2}, {2, 4}}); });
  expect_errc(Errc::DimensionMismatch, [&] { conjugate_seed(t, QMatrix::identity(3)); });
}

TEST(ConjugateSeed, BlockIdentity) {
  SeededRng rng(38);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_generic(rng, 4 + trial % 2, 2 + trial % 2);
    const auto p = random_invertible(rng, t.n());
    const auto s = conjugate_seed(t, p);
    const auto w = seed_conjugator(t, p);
    const auto params = random_params(rng, t);
    const auto img = w * rho(t, params) * inverse(w);
    const auto back = membership(s, img);
    ASSERT_TRUE(back.has_value());
    // a is unchanged, the bottom row becomes b P
    auto want = params;
    for (std::size_t i = 0; i < t.n(); ++i) {
      want.b[i] = 0;
      for (std::size_t k = 0; k < t.n(); ++k) want.b[i] += params.b[k] * p(k, i);
    }
    EXPECT_EQ(back->a, want.a);
    EXPECT_EQ(back->b, want.b);
  }
}

TEST(AreConjugate, ConjugateSeedsHaveVerifiedWitness) {
  SeededRng rng(39);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto t = random_generic(rng, n + 2 + trial % 2, n);
    const auto s = conjugate_seed(t, random_invertible(rng, n));
    const auto w = are_conjugate(t, s);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(det(w->conjugator), Rational(1));
    for (int k = 0; k < 3; ++k)
      EXPECT_TRUE(membership(s, w->conjugator * rho(t, random_params(rng, t)) * inverse(w->conjugator)));
  }
}

TEST(AreConjugate, RowPermutationsAndScalingsAreConjugate) {
  SeededRng rng(40);
  for (int trial = 0; trial < 15; ++trial) {
    const auto t = random_generic(rng, 5, 2);
    QMatrix shuffled(5, 2);
    const std::vector<std::size_t> perm{3, 0, 4, 2, 1};
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t i = 0; i < 2; ++i) shuffled(j, i) = t.matrix()(perm[j], i) * Rational(static_cast<std::int64_t>(j) + 2);
    const auto w = are_conjugate(t, SeedMatrix(shuffled));
    ASSERT_TRUE(w.has_value());
    // Unique only up to symmetries of delta(T); check consistency with the dual map.
    const auto dt = exceptional_dual_basis(t);
    const auto ds = exceptional_dual_basis(SeedMatrix(shuffled));
    std::vector<std::size_t> seen(w->row_map);
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(seen, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(w->dual_map(dt.points()[j]), ds.points()[w->row_map[j]]);
  }
}

TEST(AreConjugate, AlphaExamples) {
  EXPECT_FALSE(are_conjugate(alpha_seed(3), alpha_seed(5)).has_value());
  EXPECT_FALSE(are_conjugate(alpha_seed(3), alpha_seed(4)).has_value());
  EXPECT_TRUE(are_conjugate(alpha_seed(3), alpha_seed(-1)).has_value());
  for (int a : {3, 5, -2, 7}) {
    for (const auto& beta : conjugate_alphas(a)) EXPECT_TRUE(are_conjugate(alpha_seed(a), alpha_seed(beta)));
  }
}

TEST(AreConjugate, Errors) {
  expect_errc(Errc::ShapeMismatch, [] { are_conjugate(alpha_seed(3), seed({{1, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 3}})); });
  expect_errc(Errc::NotGeneric,
              [] { are_conjugate(alpha_seed(3), seed({{1, 0}, {2, 0}, {0, 1}, {1, 1}})); });
}

TEST(AreConjugate, AlphaGridMatchesOrbitEquality) {
  const auto grid = alpha_grid();
  int yes = 0;
  for (const auto& a : grid) {
    const auto ca = conjugate_alphas(a);
    for (const auto& b : grid) {
      const bool conj = are_conjugate(alpha_seed(a), alpha_seed(b)).has_value();
      EXPECT_EQ(conj, alpha_orbit(a) == alpha_orbit(b)) << a << " vs " << b;
      EXPECT_EQ(conj, std::find(ca.begin(), ca.end(), b) != ca.end()) << a << " vs " << b;
      yes += conj;
    }
  }
  EXPECT_GT(yes, static_cast<int>(grid.size()));
}

TEST(AlphaOrbit, Examples) {
  auto values = [](const Rational& a) {
    std::vector<Rational> v;
    for (const auto& p : alpha_orbit(a)) v.push_back(*p.affine_value());
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(values(3), (std::vector<Rational>{-3, Rational(-1, 3), Rational(1, 4), Rational(3, 4), Rational(4, 3), 4}));
  EXPECT_EQ(values(4), (std::vector<Rational>{-2, Rational(-1, 2), Rational(1, 3), Rational(2, 3), Rational(3, 2), 3}));
  EXPECT_EQ(values(Rational(4, 3)), (std::vector<Rational>{-1, Rational(1, 2), 2}));
  expect_errc(Errc::DegenerateAlpha, [] { alpha_orbit(2); });
  expect_errc(Errc::DegenerateAlpha, [] { alpha_seed(0); });
}

TEST(AlphaOrbit, SixExceptAtHarmonicAlphas) {
  for (int num = -30; num <= 30; ++num)
    for (int den = 1; den <= 7; ++den) {
      const Rational a(num, den);
      if (a == Rational(0) || a == Rational(1) || a == Rational(2)) continue;
      // harmonic quadruples (cross ratio -1, 2 or 1/2) collapse to three values
      const bool harmonic = a == Rational(2, 3) || a == Rational(4, 3);
      EXPECT_EQ(alpha_orbit(a).size(), harmonic ? 3u : 6u) << a;
      EXPECT_EQ(alpha_orbit(a), [&] {
        std::vector<ProjPoint> v;
        for (const auto& t : unordered_cross_ratio(exceptional_dual_basis(alpha_seed(a)).points()).tuples)
          v.push_back(t.entries[0]);
        return v;
      }());
    }
}

TEST(NormalizedSlice, Examples) {
  EXPECT_EQ(normalized_slice_member(QMatrix{{1, 3}}), seed({{1, 0}, {0, 1}, {1, 1}, {1, 3}}));
  expect_errc(Errc::NotGeneric, [] { normalized_slice_member(QMatrix{{1, 1}}); });
  const auto s = normalized_slice_member(QMatrix{{1, 3}, {1, 5}});
  EXPECT_EQ(s.m(), 5u);
  EXPECT_TRUE(s.generic());
  const auto d = exceptional_dual_basis(s);
  EXPECT_EQ(basis_transform(std::span<const ProjPoint>(d.points()).first(3)), ProjTransform::identity(2));
}
