#pragma once

// Exact elements of Q(pi), pi^e = p, with the p-adic valuation normalized by
// v(p) = 1. These are the coefficients of the series engine and the values
// p^mu of leg lengths mu in (1/e)Z.

#include "skelcoh/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skelcoh {

struct ScalarContext {
  std::int64_t p = 2;
  std::int64_t e = 1;

  /// Checks that p is prime and e >= 1; throws Error("InvalidContext").
  static ScalarContext make(std::int64_t p, std::int64_t e);

  friend bool operator==(const ScalarContext&, const ScalarContext&) = default;
};

/// A value in Q union {+infinity}.
class Valuation {
 public:
  Valuation() : infinite_(true) {}
  Valuation(Rational v) : infinite_(false), value_(std::move(v)) {}  // NOLINT
  static Valuation infinity() { return {}; }

  bool is_infinite() const { return infinite_; }
  /// Requires a finite valuation.
  const Rational& value() const;

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return {};
    return Valuation(a.value_ + b.value_);
  }

  std::string str() const { return infinite_ ? "inf" : to_string(value_); }

 private:
  bool infinite_;
  Rational value_;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return a <= b ? a : b; }

class ValuedScalar {
 public:
  /// Zero of the context.
  explicit ValuedScalar(ScalarContext ctx);
  ValuedScalar(ScalarContext ctx, const Rational& q);
  /// coeffs[i] multiplies pi^i; size must be e.
  ValuedScalar(ScalarContext ctx, std::vector<Rational> coeffs);

  /// pi^k for any integer k.
  static ValuedScalar pi_power(ScalarContext ctx, std::int64_t k);
  /// p^mu; mu*e must be an integer, else Error("NotInValueGroup").
  static ValuedScalar p_power(ScalarContext ctx, const Rational& mu);

  const ScalarContext& context() const { return ctx_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  Valuation valuation() const;
  /// Index i attaining min_i v_p(c_i) + i/e; nullopt for zero.
  std::optional<std::int64_t> leading_index() const;

  /// Exact inverse; Error("DivisionByZero") for zero.
  ValuedScalar inverse() const;
  ValuedScalar pow(std::int64_t n) const;

  /// Drops every pi^i component whose valuation is at least `precision`.
  ValuedScalar truncated(const Rational& precision) const;
  /// Canonical representative modulo {v >= precision}: each component is
  /// written p^a * r with -p^k/2 < r <= p^k/2.
  /// Two scalars are congruent to `precision` iff their reductions agree.
  ValuedScalar reduced(const Rational& precision) const;

  ValuedScalar operator-() const;
  ValuedScalar& operator+=(const ValuedScalar& o);
  ValuedScalar& operator-=(const ValuedScalar& o);
  ValuedScalar& operator*=(const ValuedScalar& o);
  ValuedScalar& operator*=(const Rational& q);
  friend ValuedScalar operator+(ValuedScalar a, const ValuedScalar& b) { return a += b; }
  friend ValuedScalar operator-(ValuedScalar a, const ValuedScalar& b) { return a -= b; }
  friend ValuedScalar operator*(ValuedScalar a, const ValuedScalar& b) { return a *= b; }
  friend ValuedScalar operator*(ValuedScalar a, const Rational& q) { return a *= q; }
  friend ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b) {
    return a * b.inverse();
  }
  friend bool operator==(const ValuedScalar& a, const ValuedScalar& b);

  /// "c0 + c1*pi + c2*pi^2", zero components omitted, "0" for zero.
  std::string str() const;
  /// Accepts the str() grammar: signed terms "q", "q*pi", "q*pi^k", "pi^k".
  static ValuedScalar parse(ScalarContext ctx, std::string_view text);

 private:
  void check_same(const ValuedScalar& o) const;

  ScalarContext ctx_;
  std::vector<Rational> coeffs_;
};

ValuedScalar add(const ValuedScalar& x, const ValuedScalar& y);
ValuedScalar mul(const ValuedScalar& x, const ValuedScalar& y);
inline Valuation valuation(const ValuedScalar& x) { return x.valuation(); }
inline ValuedScalar invert(const ValuedScalar& x) { return x.inverse(); }

}  // namespace skelcoh
