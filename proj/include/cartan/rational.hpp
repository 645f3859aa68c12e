#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "cartan/error.hpp"

namespace cartan {

/// Exact rational number, always in lowest terms with a positive
/// denominator, so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : q_(static_cast<long>(value)) {}  // NOLINT: implicit by design of arithmetic types
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  /// Parses "p", "-p" or "p/q" (decimal integers, q != 0).
  static Rational parse(std::string_view text) {
    auto bad = [&] { return Error(Errc::ParseError, "not a rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto valid_int = [](std::string_view s, bool allow_sign) {
      if (!s.empty() && allow_sign && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto strip_plus = [](std::string_view s) {
      if (!s.empty() && s.front() == '+') s.remove_prefix(1);
      return std::string(s);
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      if (!valid_int(text, true)) throw bad();
      return Rational(mpq_class(mpz_class(strip_plus(text))));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
    mpz_class d(std::string{den});
    if (d == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    return Rational(mpz_class(strip_plus(num)), d);
  }

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  /// "p/q", with "/q" omitted when q = 1.
  std::string to_string() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class q_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace cartan

template <>
struct std::hash<cartan::Rational> {
  std::size_t operator()(const cartan::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.to_string());
  }
};
