#pragma once

// Necessary conditions for a group to be a conjugacy limit of the positive
// diagonal group: flatness (the group is an affine slice of matrix space)
// and the presence of a one-parameter subgroup of tier 1.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/limit_group.hpp"
#include "cartan/linalg.hpp"
#include "cartan/matrix.hpp"
#include "cartan/polynomial.hpp"
#include "cartan/random.hpp"

namespace cartan {

/// v -> rho(v) with polynomial entries and rho(0) = I.
class PolyParamGroup {
 public:
  PolyParamGroup(std::size_t dim_params, std::size_t ambient, std::vector<Polynomial> entries,
                 bool declared_abelian = false)
      : d_(dim_params), n_(ambient), entries_(std::move(entries)), abelian_(declared_abelian) {
    if (entries_.size() != n_ * n_) throw Error(Errc::DimensionMismatch, "need ambient^2 entry polynomials");
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& p = entry(i, j);
        if (p.nvars() != d_) throw Error(Errc::DimensionMismatch, "entry polynomial in the wrong number of variables");
        if (p.constant_term() != Rational(i == j ? 1 : 0))
          throw Error(Errc::NotIdentityAtZero, "rho(0) is not the identity");
      }
    if (abelian_ && !satisfies_group_law()) throw Error(Errc::NotAGroupLaw, "rho(u) rho(v) != rho(u+v)");
  }

  /// Identity matrix with the given off-identity entries overridden.
  static PolyParamGroup with_entries(std::size_t dim_params, std::size_t ambient,
                                     const std::vector<std::tuple<std::size_t, std::size_t, Polynomial>>& overrides,
                                     bool declared_abelian = false) {
    std::vector<Polynomial> e;
    e.reserve(ambient * ambient);
    for (std::size_t i = 0; i < ambient; ++i)
      for (std::size_t j = 0; j < ambient; ++j) e.push_back(Polynomial::constant(dim_params, Rational(i == j ? 1 : 0)));
    for (const auto& [i, j, p] : overrides) {
      if (i >= ambient || j >= ambient) throw Error(Errc::IndexOutOfRange, "entry outside the matrix");
      e[i * ambient + j] = p;
    }
    return PolyParamGroup(dim_params, ambient, std::move(e), declared_abelian);
  }

  std::size_t dim_params() const { return d_; }
  std::size_t ambient() const { return n_; }
  bool declared_abelian() const { return abelian_; }
  const Polynomial& entry(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<Polynomial>& entries() const { return entries_; }

  QMatrix evaluate(std::span<const Rational> v) const {
    if (v.size() != d_) throw Error(Errc::DimensionMismatch, "parameter vector has wrong length");
    QMatrix g(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) g(i, j) = entry(i, j).evaluate(v);
    return g;
  }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& p : entries_) d = std::max(d, p.degree_in(var));
    return d;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& p : entries_) d = std::max(d, p.total_degree());
    return d;
  }

  /// rho(u) rho(v) = rho(u + v) on 10 deterministic pairs.
  bool satisfies_group_law() const {
    SeededRng rng(0x9e3779b97f4a7c15ULL);
    for (int k = 0; k < 10; ++k) {
      std::vector<Rational> u(d_), v(d_), w(d_);
      for (std::size_t i = 0; i < d_; ++i) {
        u[i] = rng.rational(5, 3);
        v[i] = rng.rational(5, 3);
        w[i] = u[i] + v[i];
      }
      if (evaluate(u) * evaluate(v) != evaluate(w)) return false;
    }
    return true;
  }

 private:
  std::size_t d_;
  std::size_t n_;
  std::vector<Polynomial> entries_;
  bool abelian_;
};

/// The subgroup with only the first `count` parameters free.
inline PolyParamGroup restrict_to_first(const PolyParamGroup& g, std::size_t count) {
  if (count > g.dim_params()) throw Error(Errc::IndexOutOfRange, "more parameters than the group has");
  std::vector<Polynomial> entries;
  entries.reserve(g.entries().size());
  for (const auto& p : g.entries()) {
    Polynomial q(count);
    for (const auto& [e, c] : p.terms()) {
      if (std::any_of(e.begin() + static_cast<std::ptrdiff_t>(count), e.end(), [](unsigned x) { return x > 0; }))
        continue;
      q.add_term(Polynomial::Exponents(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(count)), c);
    }
    entries.push_back(std::move(q));
  }
  return PolyParamGroup(count, g.ambient(), std::move(entries), g.declared_abelian());
}

inline PolyParamGroup lt_group(const SeedMatrix& t) {
  const std::size_t m = t.m(), n = t.n(), d = m + n;
  std::vector<std::tuple<std::size_t, std::size_t, Polynomial>> e;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!t.matrix()(j, i).is_zero()) e.emplace_back(j, m + 1 + i, t.matrix()(j, i) * Polynomial::variable(d, j));
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(m, m + 1 + i, Polynomial::variable(d, m + i));
  return PolyParamGroup::with_entries(d, t.ambient(), e, true);
}

/// mu_5(a,b,c,d) and mu_6(a,b,c,d,e): abelian, of dimension k-1, with a
/// quadratic a^2/2 entry.
inline PolyParamGroup m5_group() {
  auto v = [](std::size_t i) { return Polynomial::variable(4, i); };
  const auto a = v(0), b = v(1), c = v(2), d = v(3);
  return PolyParamGroup::with_entries(
      4, 5, {{0, 1, a}, {0, 3, Rational(1, 2) * (a * a)}, {0, 4, b}, {1, 3, a}, {2, 3, c}, {2, 4, d}}, true);
}

inline PolyParamGroup m6_group() {
  auto v = [](std::size_t i) { return Polynomial::variable(5, i); };
  const auto a = v(0), b = v(1), c = v(2), d = v(3), e = v(4);
  return PolyParamGroup::with_entries(
      5, 6, {{0, 1, a}, {0, 2, Rational(1, 2) * (a * a)}, {0, 4, b}, {0, 5, c}, {1, 2, a}, {3, 4, d}, {3, 5, e}},
      true);
}

/// Off-diagonal 4x4 block of E in SL_8, as variable indices a..g = 0..6
/// (-1 for a zero entry).
inline constexpr int kEBlockPattern[4][4] = {
    {-1, 2, 6, 5},  // 0 c g f
    {2, 1, 5, 4},   // c b f e
    {1, 0, 4, 3},   // b a e d
    {0, 6, 3, -1},  // a g d 0
};

inline PolyParamGroup e_group() {
  std::vector<std::tuple<std::size_t, std::size_t, Polynomial>> e;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (kEBlockPattern[i][j] >= 0)
        e.emplace_back(i, 4 + j, Polynomial::variable(7, static_cast<std::size_t>(kEBlockPattern[i][j])));
  return PolyParamGroup::with_entries(7, 8, e, true);
}

/// "M5", "M6", "E", or "LT" (which needs a seed).
inline PolyParamGroup builtin_group(const std::string& name, const SeedMatrix* seed = nullptr) {
  if (name == "M5") return m5_group();
  if (name == "M6") return m6_group();
  if (name == "E") return e_group();
  if (name == "LT") {
    if (!seed) throw Error(Errc::UnknownName, "builtin LT needs a seed matrix");
    return lt_group(*seed);
  }
  throw Error(Errc::UnknownName, "unknown builtin group '" + name + "'");
}

// ---- linear block families --------------------------------------------------

/// v -> sum_i v_i B_i, the off-diagonal block of a unipotent group
/// [[I, B(v)], [0, I]], so rank(g - I) = rank(B(v)).
class LinearBlockFamily {
 public:
  LinearBlockFamily(std::size_t rows, std::size_t cols, std::vector<QMatrix> coeffs)
      : p_(rows), q_(cols), coeffs_(std::move(coeffs)) {
    QMatrix flat(coeffs_.size(), p_ * q_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k].rows() != p_ || coeffs_[k].cols() != q_)
        throw Error(Errc::DimensionMismatch, "coefficient matrix has the wrong shape");
      for (std::size_t i = 0; i < p_ * q_; ++i) flat(k, i) = coeffs_[k].data()[i];
    }
    if (rank(flat) != coeffs_.size()) throw Error(Errc::DependentCoefficients, "coefficient matrices are dependent");
  }

  std::size_t dim_params() const { return coeffs_.size(); }
  std::size_t rows() const { return p_; }
  std::size_t cols() const { return q_; }
  const std::vector<QMatrix>& coeffs() const { return coeffs_; }

  QMatrix evaluate(std::span<const Rational> v) const {
    if (v.size() != coeffs_.size()) throw Error(Errc::DimensionMismatch, "parameter vector has wrong length");
    QMatrix b(p_, q_);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) b += coeffs_[k] * v[k];
    return b;
  }

  /// Entry (i, j) as a linear form in the parameters.
  Polynomial entry_form(std::size_t i, std::size_t j) const {
    Polynomial f(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      f += coeffs_[k](i, j) * Polynomial::variable(coeffs_.size(), k);
    return f;
  }

  Polynomial minor(std::size_t r1, std::size_t r2, std::size_t c1, std::size_t c2) const {
    return entry_form(r1, c1) * entry_form(r2, c2) - entry_form(r1, c2) * entry_form(r2, c1);
  }

 private:
  std::size_t p_;
  std::size_t q_;
  std::vector<QMatrix> coeffs_;
};

/// Reads the p x q block at (r0, c0) of g as a linear family; every entry of
/// the block must be a homogeneous linear form.
inline LinearBlockFamily extract_block(const PolyParamGroup& g, std::size_t r0, std::size_t c0, std::size_t p,
                                       std::size_t q) {
  if (r0 + p > g.ambient() || c0 + q > g.ambient()) throw Error(Errc::IndexOutOfRange, "block outside the matrix");
  std::vector<QMatrix> coeffs(g.dim_params(), QMatrix(p, q));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      for (const auto& [e, c] : g.entry(r0 + i, c0 + j).terms()) {
        std::size_t deg = 0, var = 0;
        for (std::size_t k = 0; k < e.size(); ++k)
          if (e[k] > 0) {
            deg += e[k];
            var = k;
          }
        if (deg != 1) throw Error(Errc::InvalidShape, "block entry is not a homogeneous linear form");
        coeffs[var](i, j) = c;
      }
  return LinearBlockFamily(p, q, std::move(coeffs));
}

inline LinearBlockFamily e_block_family() { return extract_block(e_group(), 0, 4, 4, 4); }

inline LinearBlockFamily lt_block_family(const SeedMatrix& t) {
  return extract_block(lt_group(t), 0, t.m() + 1, t.m() + 1, t.n());
}

// ---- flatness ----------------------------------------------------------------

enum class Flatness { Flat, NotFlat };

struct FlatnessResult {
  Flatness verdict;
  std::size_t hull_dim;
  std::size_t dim_params;
  std::string sample_kind;  // "tensor-grid" or "principal-lattice"
  std::vector<std::vector<Rational>> sample;
};

inline constexpr std::size_t kFlatnessSampleCap = 2000;

namespace detail {

inline std::vector<std::vector<Rational>> tensor_grid(const std::vector<unsigned>& degs) {
  std::vector<std::vector<Rational>> out{{}};
  for (unsigned deg : degs) {
    std::vector<std::vector<Rational>> next;
    for (const auto& prefix : out)
      for (unsigned x = 0; x <= deg; ++x) {
        auto v = prefix;
        v.emplace_back(static_cast<std::int64_t>(x));
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::vector<Rational>> principal_lattice(std::size_t d, unsigned total) {
  std::vector<std::vector<Rational>> out;
  std::vector<unsigned> v(d, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == d) {
      out.emplace_back(v.begin(), v.end());
      return;
    }
    for (unsigned x = 0; x <= left; ++x) {
      v[i] = x;
      self(self, i + 1, left - x);
    }
    v[i] = 0;
  };
  rec(rec, 0, total);
  return out;
}

inline double grid_size(const std::vector<unsigned>& degs) {
  double s = 1;
  for (auto d : degs) s *= d + 1.0;
  return s;
}

inline double binomial(double n, double k) {
  double r = 1;
  for (double i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// Affine-hull dimension of {rho(v)} over a sample that is unisolvent for
/// every monomial the entries use, so the hull of the sample is the hull of
/// the whole image. Flat iff that dimension equals the parameter count.
inline FlatnessResult flatness_check(const PolyParamGroup& g, std::size_t cap = kFlatnessSampleCap) {
  const std::size_t d = g.dim_params();
  std::vector<unsigned> degs(d);
  for (std::size_t i = 0; i < d; ++i) degs[i] = g.degree_in(i);
  FlatnessResult res{Flatness::Flat, 0, d, "", {}};
  if (detail::grid_size(degs) <= static_cast<double>(cap)) {
    res.sample_kind = "tensor-grid";
    res.sample = detail::tensor_grid(degs);
  } else if (detail::binomial(static_cast<double>(d + g.total_degree()), g.total_degree()) <=
             static_cast<double>(cap)) {
    res.sample_kind = "principal-lattice";
    res.sample = detail::principal_lattice(d, g.total_degree());
  } else {
    throw Error(Errc::SampleCapExceeded, "no certifying sample fits under the cap of " + std::to_string(cap));
  }
  std::vector<std::vector<Rational>> images;
  images.reserve(res.sample.size());
  for (const auto& v : res.sample) images.push_back(g.evaluate(v).data());
  res.hull_dim = affine_hull_dim(images);
  if (res.hull_dim < d)
    throw Error(Errc::DegenerateParameterization,
                "hull dimension " + std::to_string(res.hull_dim) + " is below the parameter count");
  res.verdict = res.hull_dim == d ? Flatness::Flat : Flatness::NotFlat;
  return res;
}

// ---- tier ----------------------------------------------------------------------

struct TierResult {
  std::size_t tier = 0;
  std::vector<Rational> witness;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kTierGridPoints = 243;
inline constexpr std::size_t kTierRandomPoints = 50;

/// max rank(rho(v) - I) over the grid {0,1,2}^d (first 243 points in
/// lexicographic order) and 50 seeded random rational points.
inline TierResult tier(const PolyParamGroup& g, std::uint64_t seed = 0) {
  const std::size_t d = g.dim_params();
  const QMatrix id = QMatrix::identity(g.ambient());
  TierResult res;
  res.seed = seed;
  res.witness.assign(d, Rational(0));
  auto consider = [&](const std::vector<Rational>& v) {
    ++res.samples;
    const std::size_t r = rank(g.evaluate(v) - id);
    if (r > res.tier) {
      res.tier = r;
      res.witness = v;
    }
  };
  std::vector<Rational> v(d, Rational(0));
  std::vector<unsigned> digits(d, 0);
  for (std::size_t count = 0; count < kTierGridPoints; ++count) {
    for (std::size_t i = 0; i < d; ++i) v[i] = Rational(digits[i]);
    consider(v);
    std::size_t i = d;
    while (i > 0 && digits[i - 1] == 2) digits[--i] = 0;
    if (i == 0) break;
    ++digits[i - 1];
  }
  SeededRng rng(seed);
  for (std::size_t k = 0; k < kTierRandomPoints; ++k) {
    for (auto& x : v) x = rng.rational(9, 4);
    consider(v);
  }
  return res;
}

// ---- tier-one one-parameter subgroups -----------------------------------------

/// One forcing step: with the earlier variables set to zero, the 2x2 minor on
/// (rows, cols) equals coefficient * v_var^2, so a rank-1 element has v_var = 0.
struct PropagationStep {
  std::size_t var;
  std::size_t row1, row2, col1, col2;
  Rational coefficient;
};

enum class TierOneVerdict { No, Witness, Undecided };

struct TierOneResult {
  TierOneVerdict verdict = TierOneVerdict::Undecided;
  std::vector<PropagationStep> certificate;
  std::vector<Rational> witness;
  std::uint64_t seed = 0;
  std::size_t search_attempts = 0;
};

namespace detail {

struct MinorPos {
  std::size_t r1, r2, c1, c2;
};

/// Adjacent minors walking down each adjacent column pair, then every other
/// minor in lexicographic order.
inline std::vector<MinorPos> minor_scan_order(std::size_t p, std::size_t q) {
  std::vector<MinorPos> order;
  for (std::size_t c = 0; c + 1 < q; ++c)
    for (std::size_t r = 0; r + 1 < p; ++r) order.push_back({r, r + 1, c, c + 1});
  for (std::size_t r1 = 0; r1 < p; ++r1)
    for (std::size_t r2 = r1 + 1; r2 < p; ++r2)
      for (std::size_t c1 = 0; c1 < q; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < q; ++c2)
          if (!(r2 == r1 + 1 && c2 == c1 + 1)) order.push_back({r1, r2, c1, c2});
  return order;
}

/// If poly is c * v_i^2 (single term), returns i.
inline std::optional<std::size_t> single_square(const Polynomial& poly) {
  if (poly.terms().size() != 1) return std::nullopt;
  const auto& e = poly.terms().begin()->first;
  std::optional<std::size_t> var;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (e[i] != 2 || var) return std::nullopt;
    var = i;
  }
  return var;
}

inline Polynomial square_of(std::size_t nvars, std::size_t var, const Rational& c) {
  auto x = Polynomial::variable(nvars, var);
  return c * (x * x);
}

}  // namespace detail

inline constexpr std::size_t kTierOneSearchBudget = 2000;

/// Decides whether some v != 0 has rank B(v) = 1: minor propagation first
/// (a certificate for No), then unit vectors and seeded sparse random
/// vectors (a witness), else Undecided.
inline TierOneResult has_tier_one_element(const LinearBlockFamily& f, std::uint64_t seed = 0,
                                          std::size_t budget = kTierOneSearchBudget) {
  const std::size_t d = f.dim_params();
  TierOneResult res;
  res.seed = seed;
  std::vector<bool> forced(d, false);

  const auto order = detail::minor_scan_order(f.rows(), f.cols());
  std::vector<Polynomial> minors;
  minors.reserve(order.size());
  for (const auto& pos : order) minors.push_back(f.minor(pos.r1, pos.r2, pos.c1, pos.c2));

  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto reduced = minors[k].without(forced);
      const auto var = detail::single_square(reduced);
      if (!var || forced[*var]) continue;
      const auto& pos = order[k];
      res.certificate.push_back({*var, pos.r1, pos.r2, pos.c1, pos.c2, reduced.terms().begin()->second});
      forced[*var] = true;
      progress = true;
      break;
    }
  }
  if (std::all_of(forced.begin(), forced.end(), [](bool b) { return b; })) {
    res.verdict = TierOneVerdict::No;
    return res;
  }

  auto try_vector = [&](const std::vector<Rational>& v) {
    ++res.search_attempts;
    if (rank(f.evaluate(v)) == 1) {
      res.verdict = TierOneVerdict::Witness;
      res.witness = v;
      return true;
    }
    return false;
  };
  std::vector<std::size_t> free_vars;
  for (std::size_t i = 0; i < d; ++i)
    if (!forced[i]) free_vars.push_back(i);
  for (auto i : free_vars) {
    std::vector<Rational> v(d, Rational(0));
    v[i] = 1;
    if (try_vector(v)) return res;
  }
  SeededRng rng(seed);
  for (std::size_t attempt = 0; attempt < budget && free_vars.size() > 1; ++attempt) {
    std::vector<Rational> v(d, Rational(0));
    const auto support = static_cast<std::size_t>(rng.uniform_int(2, std::min<std::int64_t>(3, free_vars.size())));
    for (std::size_t s = 0; s < support; ++s)
      v[free_vars[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(free_vars.size()) - 1))]] =
          rng.nonzero_int(3);
    if (try_vector(v)) return res;
  }
  res.verdict = TierOneVerdict::Undecided;
  return res;
}

/// Re-checks a propagation certificate step by step; true iff every step is
/// valid and together they force every variable to zero.
inline bool replay_certificate(const LinearBlockFamily& f, const std::vector<PropagationStep>& steps) {
  const std::size_t d = f.dim_params();
  std::vector<bool> forced(d, false);
  for (const auto& s : steps) {
    if (s.var >= d || forced[s.var] || s.row1 >= s.row2 || s.row2 >= f.rows() || s.col1 >= s.col2 ||
        s.col2 >= f.cols() || s.coefficient.is_zero())
      return false;
    const auto reduced = f.minor(s.row1, s.row2, s.col1, s.col2).without(forced);
    if (reduced != detail::square_of(d, s.var, s.coefficient)) return false;
    forced[s.var] = true;
  }
  return std::all_of(forced.begin(), forced.end(), [](bool b) { return b; });
}

struct FlagProfile {
  std::vector<std::size_t> tiers;  // tiers[i-1] = tier(H_i)
  bool bound_holds = false;        // tier(H_i) <= i for all i, and tier(H_1) = 1
};

/// Tiers of the coordinate flag H_1 < H_2 < ... of L_T, where H_i frees the
/// first i of (a_1..a_m, b_1..b_n).
inline FlagProfile flag_tier_profile(const SeedMatrix& t, std::uint64_t seed = 0) {
  const auto g = lt_group(t);
  FlagProfile prof;
  prof.bound_holds = true;
  for (std::size_t i = 1; i <= g.dim_params(); ++i) {
    const auto ti = tier(restrict_to_first(g, i), seed).tier;
    prof.tiers.push_back(ti);
    if (ti > i) prof.bound_holds = false;
  }
  if (prof.tiers.empty() || prof.tiers.front() != 1) prof.bound_holds = false;
  return prof;
}

}  // namespace cartan
