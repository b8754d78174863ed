#pragma once

// Truncated Laurent series sum a_n T^n over Q(pi), known modulo {v >= M}.
//
// A series stores the coefficients on a window [n_min, n_max] containing 0.
// Below the window every coefficient has valuation >= M (the tail
// certificate). Above it the coefficients are either negligible (also >= M)
// or only bounded below by head_bound(); products and inverses of power
// series in T produce such heads and the certified window shrinks
// accordingly. Nothing outside the certified window is ever guessed: an
// operation that cannot certify its result at a positive precision and on a
// window containing 0 throws Error("PrecisionOverflow").

#include "skelcoh/valued_scalar.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skelcoh {

struct SeriesContext {
  ScalarContext scalar;
  Rational prec{12};
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;

  /// Checks prec > 0 and n_min <= 0 <= n_max; Error("InvalidContext").
  static SeriesContext make(ScalarContext scalar, const Rational& prec, std::int64_t n_min,
                            std::int64_t n_max);
  friend bool operator==(const SeriesContext&, const SeriesContext&) = default;
};

class LaurentSeries {
 public:
  using Coeffs = std::map<std::int64_t, ValuedScalar>;

  /// Coefficients are reduced modulo precision; exponents must lie in the
  /// window (Error("OutOfWindow")). The default head is negligible.
  LaurentSeries(SeriesContext ctx, const Coeffs& coeffs,
                Valuation head_bound = Valuation::infinity());

  static LaurentSeries zero(const SeriesContext& ctx);
  static LaurentSeries constant(const SeriesContext& ctx, const ValuedScalar& c);
  /// c*T^k; the window is widened to contain k.
  static LaurentSeries monomial(SeriesContext ctx, std::int64_t k, const ValuedScalar& c);

  const SeriesContext& ctx() const { return ctx_; }
  const Rational& prec() const { return ctx_.prec; }
  std::int64_t n_min() const { return ctx_.n_min; }
  std::int64_t n_max() const { return ctx_.n_max; }
  /// Nonzero stored coefficients.
  const Coeffs& coeffs() const { return coeffs_; }
  /// a_n; zero below the window and above it when the head is negligible,
  /// Error("NotDetermined") above a non-negligible head.
  ValuedScalar coeff(std::int64_t n) const;

  bool tail_certificate() const { return true; }
  /// Lower bound for v(a_n), n > n_max; infinite when negligible.
  const Valuation& head_bound() const { return head_; }
  bool head_negligible() const { return head_.is_infinite(); }

  /// All stored valuations and the head bound are >= 0.
  bool is_integral() const;
  /// Least valuation among stored coefficients and the head bound.
  Valuation min_valuation() const;
  std::int64_t lowest_exponent() const;   // of a nonzero coefficient, else 0
  std::int64_t highest_exponent() const;  // of a nonzero coefficient, else 0

  std::string str() const;
  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

 private:
  void normalize();

  SeriesContext ctx_;
  Coeffs coeffs_;
  Valuation head_;
};

LaurentSeries operator-(const LaurentSeries& a);
LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b);
/// Product certified on the largest window the head bounds allow, at
/// precision min(Ma, Mb, Ma + v(b), Mb + v(a)).
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);
/// Precision drops by v(s) when v(s) < 0.
LaurentSeries scalar_mul(const ValuedScalar& s, const LaurentSeries& f);
/// f * T^k.
LaurentSeries shift(const LaurentSeries& f, std::int64_t k);
LaurentSeries derive(const LaurentSeries& f);
/// T d/dT.
LaurentSeries theta(const LaurentSeries& f);

/// True when a - b vanishes on the certified window, to the lower precision.
bool congruent(const LaurentSeries& a, const LaurentSeries& b);

struct NewtonData {
  Rational v;
  std::int64_t v_prime = 0;
  friend bool operator==(const NewtonData&, const NewtonData&) = default;
};

/// Least stored valuation and the least exponent attaining it.
/// Error("NotDetermined") for a zero series or when the head bound is below
/// the stored minimum.
NewtonData newton_data(const LaurentSeries& u);

/// u = c T^k u_plus u_minus, u_plus in 1 + T O[[T]], u_minus in
/// 1 + T^-1 m<T^-1>. u_plus and u_minus carry precision M - v(c).
struct UnitFactorization {
  ValuedScalar c;
  std::int64_t k = 0;
  LaurentSeries u_plus;
  LaurentSeries u_minus;
};

/// Alternating fixed point u_plus = N+(u0 / u_minus), u_minus = N-(u0 / u_plus)
/// on u0 = u / (a_k T^k), where N+ and N- keep the n >= 0 and n <= 0 parts
/// and normalize the constant term to 1. For a Laurent polynomial u both
/// factors are polynomials, of degree <= n_max - k in T and <= k - n_min in
/// T^-1. Error("NotAUnit") when the Newton data is not determined,
/// Error("PrecisionOverflow") when u has a non-negligible head.
UnitFactorization factorize_unit(const LaurentSeries& u);

/// c T^k u_plus u_minus, at the precision of u_plus.
LaurentSeries expand(const UnitFactorization& f);

/// 1/u for a unit u, certified at least up to exponent `top`.
LaurentSeries invert(const LaurentSeries& u, std::int64_t top);
LaurentSeries invert(const LaurentSeries& u);

/// u(w) for a parameter w: integral with Newton data (0, 1).
/// Error("NotAParameter").
LaurentSeries substitute_parameter(const LaurentSeries& u, const LaurentSeries& w);

/// The coefficient of T^0 of a form given against dT/T.
ValuedScalar residue(const LaurentSeries& omega);

/// Coefficients of du/u against dT/T, i.e. theta(u) / u.
LaurentSeries dlog(const LaurentSeries& u);

/// On the leg T1 T2 = p^mu: side 1 returns f, side 2 rewrites the finite sum
/// of stored coefficients in T2 through T1 = p^mu / T2. Coefficients at
/// T1^n, n < 0, lose n*mu of precision. Error("InvalidSide"),
/// Error("NotInValueGroup"), Error("PrecisionOverflow").
LaurentSeries leg_restrict(const LaurentSeries& f, int side, const Rational& mu);
/// Same for a form f dT1/T1; dT1/T1 = -dT2/T2 flips the sign on side 2.
LaurentSeries leg_restrict_form(const LaurentSeries& f, int side, const Rational& mu);

/// ell-th root by the binomial series, for u in 1 + T O[[T]] or in
/// 1 + T^-1 m<T^-1>. Error("BadSubgroup") otherwise, Error("InvalidExponent")
/// unless ell >= 2 is prime to p.
LaurentSeries prime_to_p_root(const LaurentSeries& u, std::int64_t ell);

struct DivisorPoint {
  ValuedScalar a;
  std::int64_t multiplicity = 1;
};

/// dlog of prod (T - a)^m on the circle v(T) = r, against dS/S in the
/// normalized variable S = T / p^r. A point with v(a) > r is inside and
/// expands in S^-1 with residue m; a point with v(a) < r expands in S with
/// residue 0. Error("PointOnCircle") when v(a) = r.
LaurentSeries rational_on_circle(ScalarContext scalar, const Rational& prec,
                                 const std::vector<DivisorPoint>& divisor, const Rational& r);

/// "n:value,n:value,..." with values in the ValuedScalar grammar.
LaurentSeries::Coeffs parse_coefficients(ScalarContext scalar, std::string_view text);

}  // namespace skelcoh
