#pragma once

// JSON schemas shared by the CLI and fixtures. Rationals are always the
// strings "p/q" (or "p"); indices into rows/columns are 1-based.

#include <json.hpp>

#include <string>
#include <vector>

#include "cartan/bounds.hpp"
#include "cartan/converge.hpp"
#include "cartan/cross_ratio.hpp"
#include "cartan/limit_group.hpp"
#include "cartan/obstruct.hpp"

namespace cartan::io {

using Json = nlohmann::ordered_json;

inline Error parse_error(const std::string& what) { return Error(Errc::ParseError, what); }

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

inline std::size_t get_size(const Json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_unsigned()) throw parse_error(std::string("'") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

inline Json to_json(const Rational& r) { return r.to_string(); }

inline Rational rational_from(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw parse_error("expected a rational string, got " + j.dump());
}

inline Json to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline std::vector<Rational> rational_vector_from(const Json& j) {
  if (!j.is_array()) throw parse_error("expected an array of rationals");
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(rational_from(x));
  return v;
}

inline Json to_json(const QMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row_vector(i)));
  return a;
}

inline QMatrix matrix_from(const Json& j) {
  if (!j.is_array()) throw parse_error("expected an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) rows.push_back(rational_vector_from(r));
  try {
    return QMatrix::from_rows(rows);
  } catch (const Error&) {
    throw parse_error("matrix rows have different lengths");
  }
}

inline Json to_json(const ProjPoint& p) { return to_json(p.coords()); }
inline ProjPoint point_from(const Json& j) { return ProjPoint(rational_vector_from(j)); }

inline Json to_json(const std::vector<ProjPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

/// {"n": n, "points": [[...], ...]}
inline std::vector<ProjPoint> points_from(const Json& j) {
  const std::size_t n = get_size(j, "n");
  const auto& arr = require(j, "points");
  if (!arr.is_array()) throw parse_error("'points' must be an array");
  std::vector<ProjPoint> pts;
  for (const auto& p : arr) {
    pts.push_back(point_from(p));
    if (pts.back().size() != n) throw parse_error("point length differs from n");
  }
  return pts;
}

inline Json to_json(const AugmentedBasis& b) { return Json{{"n", b.n()}, {"points", to_json(b.points())}}; }

inline Json to_json(const CrossRatioTuple& t) { return to_json(t.entries); }

inline Json to_json(const UnorderedCrossRatio& uc) {
  Json a = Json::array();
  for (const auto& t : uc.tuples) a.push_back(to_json(t));
  return a;
}

/// Affine chart value of a point of RP^1 ("inf" at [0:1]).
inline Json affine_json(const ProjPoint& p) {
  const auto v = p.affine_value();
  return v ? to_json(*v) : Json("inf");
}

inline Json to_json(const SeedMatrix& t) {
  return Json{{"m", t.m()}, {"n", t.n()}, {"rows", to_json(t.matrix())}};
}

/// {"m": m, "n": n, "rows": [[...], ...]}
inline SeedMatrix seed_from(const Json& j) {
  const std::size_t m = get_size(j, "m");
  const std::size_t n = get_size(j, "n");
  auto t = matrix_from(require(j, "rows"));
  if (t.rows() != m || t.cols() != n) throw parse_error("'rows' shape does not match m x n");
  return SeedMatrix(std::move(t));
}

inline Json to_json(const GroupElementParams& p) { return Json{{"a", to_json(p.a)}, {"b", to_json(p.b)}}; }

inline Json to_json(const OrbitClass& c) {
  Json rows = Json::array();
  for (auto j : c.vanishing) rows.push_back(j + 1);
  return Json{{"kind", orbit_kind_name(c.kind)}, {"dim", c.dim}, {"vanishing", rows}};
}

inline Json to_json(const ConvergenceTrace& t) {
  Json r = Json::array(), dist = Json::array(), diag = Json::array();
  for (const auto& x : t.r_values) r.push_back(to_json(x));
  for (double d : t.distances) dist.push_back(d);
  for (const auto& row : t.diag_entries) diag.push_back(row);
  return Json{{"r", r}, {"distance", dist}, {"diag", diag}};
}

inline Json to_json(const BoundsReport& b) {
  return Json{{"k", b.k},
              {"best_m", b.best_m},
              {"best_n", b.best_n},
              {"best_value", b.best_value},
              {"lower_bound", to_json(b.lower_bound)},
              {"upper_bound", b.upper_bound},
              {"ok", b.ok}};
}

inline Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"coeff", to_json(c)}, {"exponents", e}});
  return terms;
}

inline Polynomial polynomial_from(const Json& terms, std::size_t nvars) {
  if (!terms.is_array()) throw parse_error("'terms' must be an array");
  Polynomial p(nvars);
  for (const auto& t : terms) {
    const auto& e = require(t, "exponents");
    if (!e.is_array() || e.size() != nvars) throw parse_error("exponent vector must have dim_params entries");
    Polynomial::Exponents ex;
    for (const auto& x : e) {
      if (!x.is_number_unsigned()) throw parse_error("exponents must be nonnegative integers");
      ex.push_back(x.get<unsigned>());
    }
    p.add_term(ex, rational_from(require(t, "coeff")));
  }
  return p;
}

/// {"builtin": "M5"|"M6"|"E"} or {"builtin": "LT", "seed": {...}} or an
/// explicit family {"dim_params": d, "ambient": n, "abelian": bool,
/// "entries": [{"row": i, "col": j, "terms": [{"coeff": c, "exponents": [...]}]}]}
/// where unlisted entries are those of the identity.
inline PolyParamGroup group_from(const Json& j) {
  if (j.is_object() && j.contains("builtin")) {
    const auto name = require(j, "builtin").get<std::string>();
    if (name == "LT") {
      const auto seed = seed_from(require(j, "seed"));
      return builtin_group(name, &seed);
    }
    return builtin_group(name);
  }
  const std::size_t d = get_size(j, "dim_params");
  const std::size_t n = get_size(j, "ambient");
  const bool abelian = j.contains("abelian") && j.at("abelian").get<bool>();
  std::vector<std::tuple<std::size_t, std::size_t, Polynomial>> overrides;
  for (const auto& e : require(j, "entries")) {
    const std::size_t row = get_size(e, "row"), col = get_size(e, "col");
    if (row == 0 || col == 0 || row > n || col > n) throw parse_error("entry position out of range (1-based)");
    overrides.emplace_back(row - 1, col - 1, polynomial_from(require(e, "terms"), d));
  }
  return PolyParamGroup::with_entries(d, n, overrides, abelian);
}

/// {"builtin": "E"} or {"builtin": "LT", "seed": {...}} or
/// {"rows": p, "cols": q, "coefficients": [matrix, ...]}.
inline LinearBlockFamily family_from(const Json& j) {
  if (j.is_object() && j.contains("builtin")) {
    const auto name = require(j, "builtin").get<std::string>();
    if (name == "E") return e_block_family();
    if (name == "LT") return lt_block_family(seed_from(require(j, "seed")));
    throw Error(Errc::UnknownName, "unknown builtin family '" + name + "'");
  }
  const std::size_t p = get_size(j, "rows"), q = get_size(j, "cols");
  std::vector<QMatrix> coeffs;
  for (const auto& c : require(j, "coefficients")) {
    coeffs.push_back(matrix_from(c));
    if (coeffs.back().rows() != p || coeffs.back().cols() != q) throw parse_error("coefficient matrix shape");
  }
  return LinearBlockFamily(p, q, std::move(coeffs));
}

inline Json to_json(const PropagationStep& s) {
  return Json{{"var", s.var + 1},
              {"rows", {s.row1 + 1, s.row2 + 1}},
              {"cols", {s.col1 + 1, s.col2 + 1}},
              {"coefficient", to_json(s.coefficient)}};
}

inline const char* verdict_name(TierOneVerdict v) {
  switch (v) {
    case TierOneVerdict::No: return "no";
    case TierOneVerdict::Witness: return "witness";
    case TierOneVerdict::Undecided: return "undecided";
  }
  return "?";
}

}  // namespace cartan::io
