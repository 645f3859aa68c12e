#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/rational.hpp"

namespace cartan {

/// Sparse multivariate polynomial over Q in a fixed number of variables.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t nvars, std::size_t i) {
    Polynomial p(nvars);
    Exponents e(nvars, 0);
    e.at(i) = 1;
    p.add_term(e, Rational(1));
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != nvars_) throw Error(Errc::DimensionMismatch, "exponent vector has wrong length");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Rational constant_term() const {
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  Rational evaluate(std::span<const Rational> v) const {
    if (v.size() != nvars_) throw Error(Errc::DimensionMismatch, "evaluation point has wrong length");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term *= v[i];
      sum += term;
    }
    return sum;
  }

  /// Sets the listed variables to zero.
  Polynomial without(const std::vector<bool>& zeroed) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      bool keep = true;
      for (std::size_t i = 0; i < nvars_; ++i) keep = keep && !(zeroed[i] && e[i] > 0);
      if (keep) out.add_term(e, c);
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw Error(Errc::DimensionMismatch, "polynomials in different rings");
    Polynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.nvars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    Polynomial out(p.nvars_);
    for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
    return out;
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::size_t nvars_;
  std::map<Exponents, Rational> terms_;
};

}  // namespace cartan
