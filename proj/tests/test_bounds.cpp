#include <gtest/gtest.h>

#include "cartan/bounds.hpp"

using namespace cartan;

namespace {

// Enumerates all (m, n) with m + n + 1 = k directly on the factored form.
IntegerSplit oracle_split(std::int64_t k) {
  IntegerSplit best{0, 0, INT64_MIN};
  for (std::int64_t n = 2; n < k; ++n) {
    const std::int64_t m = k - n - 1;
    if (m < n + 2) continue;
    const std::int64_t v = (n - 1) * (m - n - 1);
    if (v > best.value) best = {m, n, v};
  }
  return best;
}

}  // namespace

TEST(DimT, Examples) {
  EXPECT_EQ(dim_T(4, 2), 1);
  EXPECT_EQ(dim_T(5, 2), 2);
  for (std::int64_t n = 2; n < 20; ++n) EXPECT_EQ(dim_T(n + 2, n), n - 1);
  EXPECT_THROW(dim_T(3, 2), Error);
  EXPECT_THROW(dim_T(5, 1), Error);
}

TEST(GValue, Examples) {
  EXPECT_EQ(g_value(7, 2), 1);
  EXPECT_EQ(g_value(8, 2), 2);
  EXPECT_EQ(g_value(12, 3), 8);
  EXPECT_EQ(g_value(12, 2), 6);
  EXPECT_EQ(g_value(12, 4), 6);
}

TEST(GValue, MatchesDimTExhaustively) {
  for (std::int64_t k = 7; k <= 60; ++k)
    for (std::int64_t n = 2; k - n - 1 >= n + 2; ++n) EXPECT_EQ(g_value(k, n), dim_T(k - n - 1, n)) << k << "," << n;
}

TEST(GValue, SecondDifferenceIsMinusFour) {
  for (std::int64_t k = 7; k <= 200; ++k)
    for (std::int64_t n = -5; n <= 60; ++n)
      EXPECT_EQ(g_value(k, n + 1) - 2 * g_value(k, n) + g_value(k, n - 1), -4);
}

TEST(BestIntegerSplit, Examples) {
  auto check = [](std::int64_t k, std::int64_t m, std::int64_t n, std::int64_t v) {
    const auto s = best_integer_split(k);
    EXPECT_EQ(s.m, m);
    EXPECT_EQ(s.n, n);
    EXPECT_EQ(s.value, v);
  };
  check(7, 4, 2, 1);
  check(8, 5, 2, 2);
  check(12, 8, 3, 8);
  try {
    best_integer_split(6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::KTooSmall);
  }
}

TEST(BestIntegerSplit, AgreesWithOracle) {
  for (std::int64_t k = 7; k <= 200; ++k) {
    const auto s = best_integer_split(k), o = oracle_split(k);
    EXPECT_EQ(s.value, o.value) << k;
    EXPECT_EQ(s.n, o.n) << k;
    EXPECT_EQ(s.m + s.n + 1, k);
    EXPECT_GE(s.m - 2, s.n);
    EXPECT_GE(s.n, 2);
  }
}

TEST(Bounds, Examples) {
  EXPECT_EQ(lower_bound(7), Rational(5, 8));
  EXPECT_EQ(upper_bound(7), 42);
  EXPECT_EQ(lower_bound(8), Rational(3, 2));
  EXPECT_EQ(upper_bound(8), 56);
  EXPECT_EQ(lower_bound(12), Rational(15, 2));
  EXPECT_EQ(upper_bound(12), 132);
  EXPECT_EQ(lower_bound(100), Rational(2303, 2));
  EXPECT_THROW(lower_bound(6), Error);
}

TEST(Bounds, LowerBoundPositive) {
  for (std::int64_t k = 7; k <= 500; ++k) EXPECT_GT(lower_bound(k), Rational(0));
}

TEST(VerifyBounds, FullRangeAllOk) {
  const auto reports = verify_bounds(7, 200);
  ASSERT_EQ(reports.size(), 194u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.ok) << r.k;
    EXPECT_EQ(r.ok, Rational(r.best_value) >= r.lower_bound);
    EXPECT_EQ(r.best_m + r.best_n + 1, r.k);
    EXPECT_LE(Rational(r.best_value), Rational(r.upper_bound));
  }
  EXPECT_EQ(reports.front().best_value, 1);
  EXPECT_EQ(reports[100 - 7].best_n, 25);
  EXPECT_THROW(verify_bounds(6, 10), Error);
  EXPECT_THROW(verify_bounds(10, 9), Error);
}
