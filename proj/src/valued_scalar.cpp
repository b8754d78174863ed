#include "skelcoh/valued_scalar.hpp"

#include "skelcoh/error.hpp"
#include "skelcoh/linalg.hpp"

#include <cctype>

namespace skelcoh {

ScalarContext ScalarContext::make(std::int64_t p, std::int64_t e) {
  if (!is_prime(p)) throw Error("InvalidContext", "p = " + std::to_string(p) + " is not prime");
  if (e < 1) throw Error("InvalidContext", "ramification index must be >= 1");
  return ScalarContext{p, e};
}

const Rational& Valuation::value() const {
  if (infinite_) throw Error("InfiniteValuation", "valuation of zero has no finite value");
  return value_;
}

ValuedScalar::ValuedScalar(ScalarContext ctx)
    : ctx_(ctx), coeffs_(static_cast<std::size_t>(ctx.e), Rational(0)) {}

ValuedScalar::ValuedScalar(ScalarContext ctx, const Rational& q) : ValuedScalar(ctx) {
  coeffs_[0] = q;
}

ValuedScalar::ValuedScalar(ScalarContext ctx, std::vector<Rational> coeffs)
    : ctx_(ctx), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(ctx.e))
    throw Error("ContextMismatch", "expected " + std::to_string(ctx.e) + " coefficients");
}

ValuedScalar ValuedScalar::pi_power(ScalarContext ctx, std::int64_t k) {
  std::int64_t q = k / ctx.e;
  std::int64_t r = k % ctx.e;
  if (r < 0) {
    r += ctx.e;
    q -= 1;
  }
  Integer pq = boost::multiprecision::pow(Integer(ctx.p), static_cast<unsigned>(q < 0 ? -q : q));
  ValuedScalar out(ctx);
  out.coeffs_[static_cast<std::size_t>(r)] = q < 0 ? Rational(Integer(1), pq) : Rational(pq);
  return out;
}

ValuedScalar ValuedScalar::p_power(ScalarContext ctx, const Rational& mu) {
  const Rational scaled = mu * ctx.e;
  if (!is_integer(scaled))
    throw Error("NotInValueGroup", to_string(mu) + " is not in (1/" + std::to_string(ctx.e) + ")Z");
  return pi_power(ctx, boost::multiprecision::numerator(scaled).convert_to<std::int64_t>());
}

bool ValuedScalar::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<std::int64_t> ValuedScalar::leading_index() const {
  std::optional<std::int64_t> best;
  Rational best_v;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    Rational v = Rational(padic_valuation(coeffs_[i], ctx_.p)) +
                 Rational(static_cast<std::int64_t>(i), ctx_.e);
    if (!best || v < best_v) {
      best = static_cast<std::int64_t>(i);
      best_v = v;
    }
  }
  return best;
}

Valuation ValuedScalar::valuation() const {
  auto i = leading_index();
  if (!i) return Valuation::infinity();
  const auto& c = coeffs_[static_cast<std::size_t>(*i)];
  return Valuation(Rational(padic_valuation(c, ctx_.p)) + Rational(*i, ctx_.e));
}

ValuedScalar ValuedScalar::inverse() const {
  if (is_zero()) throw Error("DivisionByZero", "inverse of zero");
  const auto e = static_cast<Index>(ctx_.e);
  // column j holds the coordinates of x * pi^j
  RatMatrix m(e, e);
  for (Index j = 0; j < e; ++j) {
    ValuedScalar col = *this * pi_power(ctx_, j);
    for (Index i = 0; i < e; ++i) m(i, j) = col.coeffs_[static_cast<std::size_t>(i)];
  }
  RatVector rhs = RatVector::Zero(e);
  rhs(0) = 1;
  RatVector y;
  if (!solve_square(m, rhs, y)) throw Error("DivisionByZero", "singular multiplication matrix");
  return ValuedScalar(ctx_, std::vector<Rational>(y.data(), y.data() + e));
}

ValuedScalar ValuedScalar::pow(std::int64_t n) const {
  if (n < 0) return inverse().pow(-n);
  ValuedScalar result(ctx_, Rational(1));
  ValuedScalar base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

ValuedScalar ValuedScalar::truncated(const Rational& precision) const {
  ValuedScalar out = *this;
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) {
    if (out.coeffs_[i] == 0) continue;
    Rational v = Rational(padic_valuation(out.coeffs_[i], ctx_.p)) +
                 Rational(static_cast<std::int64_t>(i), ctx_.e);
    if (v >= precision) out.coeffs_[i] = 0;
  }
  return out;
}

ValuedScalar ValuedScalar::reduced(const Rational& precision) const {
  ValuedScalar out(ctx_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    const Rational shift(static_cast<std::int64_t>(i), ctx_.e);
    const std::int64_t a = padic_valuation(c, ctx_.p);
    if (Rational(a) + shift >= precision) continue;
    // keep c modulo p^n, n the least integer with n + i/e >= precision
    Rational bound = precision - shift;
    std::int64_t n = floor_to_int(bound);
    if (Rational(n) < bound) ++n;
    const Integer modulus = boost::multiprecision::pow(Integer(ctx_.p), static_cast<unsigned>(n - a));
    const Rational pa = a >= 0 ? Rational(boost::multiprecision::pow(Integer(ctx_.p), static_cast<unsigned>(a)))
                               : Rational(Integer(1), boost::multiprecision::pow(Integer(ctx_.p), static_cast<unsigned>(-a)));
    const Rational w = c / pa;  // p-adic unit
    Integer den_inv;
    mpz_invert(den_inv.backend().data(), boost::multiprecision::denominator(w).backend().data(),
               modulus.backend().data());
    Integer r = (boost::multiprecision::numerator(w) * den_inv) % modulus;
    if (r < 0) r += modulus;
    if (2 * r > modulus) r -= modulus;  // symmetric representative
    out.coeffs_[i] = pa * Rational(r);
  }
  return out;
}

void ValuedScalar::check_same(const ValuedScalar& o) const {
  if (!(ctx_ == o.ctx_))
    throw Error("ContextMismatch", "scalars from (p=" + std::to_string(ctx_.p) +
                                       ",e=" + std::to_string(ctx_.e) + ") and (p=" +
                                       std::to_string(o.ctx_.p) + ",e=" +
                                       std::to_string(o.ctx_.e) + ")");
}

ValuedScalar ValuedScalar::operator-() const {
  ValuedScalar out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

ValuedScalar& ValuedScalar::operator+=(const ValuedScalar& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

ValuedScalar& ValuedScalar::operator-=(const ValuedScalar& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

ValuedScalar& ValuedScalar::operator*=(const ValuedScalar& o) {
  check_same(o);
  const auto e = coeffs_.size();
  std::vector<Rational> out(e, Rational(0));
  const Rational p(ctx_.p);
  for (std::size_t i = 0; i < e; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < e; ++j) {
      if (o.coeffs_[j] == 0) continue;
      Rational t = coeffs_[i] * o.coeffs_[j];
      if (i + j >= e)
        out[i + j - e] += p * t;
      else
        out[i + j] += t;
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

ValuedScalar& ValuedScalar::operator*=(const Rational& q) {
  for (auto& c : coeffs_) c *= q;
  return *this;
}

bool operator==(const ValuedScalar& a, const ValuedScalar& b) {
  return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
}

std::string ValuedScalar::str() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    std::string mag = to_string(abs(c));
    std::string term;
    if (i == 0) {
      term = mag;
    } else {
      std::string pi = i == 1 ? "pi" : "pi^" + std::to_string(i);
      term = mag == "1" ? pi : mag + "*" + pi;
    }
    if (out.empty())
      out = c < 0 ? "-" + term : term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

ValuedScalar ValuedScalar::parse(ScalarContext ctx, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("empty scalar");

  // split into signed terms at top-level +/- (not directly after '^')
  std::vector<std::pair<bool, std::string>> terms;
  bool neg = false;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool sign = (c == '+' || c == '-') && (i == 0 || s[i - 1] != '^');
    if (sign) {
      if (!cur.empty()) {
        terms.emplace_back(neg, cur);
        cur.clear();
        neg = false;
      } else if (i > 0 && s[i - 1] != '+' && s[i - 1] != '-') {
        throw InputError("malformed scalar '" + std::string(text) + "'");
      }
      if (c == '-') neg = !neg;
    } else {
      cur.push_back(c);
    }
  }
  if (cur.empty()) throw InputError("malformed scalar '" + std::string(text) + "'");
  terms.emplace_back(neg, cur);

  ValuedScalar out(ctx);
  for (const auto& [negative, term] : terms) {
    Rational coeff(1);
    std::int64_t power = 0;
    auto pi_at = term.find("pi");
    if (pi_at == std::string::npos) {
      coeff = parse_rational(term);
    } else {
      std::string head = term.substr(0, pi_at);
      std::string tail = term.substr(pi_at + 2);
      if (!head.empty()) {
        if (head.back() != '*') throw InputError("expected '*' before pi in '" + term + "'");
        head.pop_back();
        coeff = parse_rational(head);
      }
      if (tail.empty()) {
        power = 1;
      } else {
        if (tail.front() != '^') throw InputError("expected '^' after pi in '" + term + "'");
        Rational k = parse_rational(tail.substr(1));
        if (!is_integer(k) || k < 0) throw InputError("pi exponent must be a nonnegative integer");
        power = boost::multiprecision::numerator(k).convert_to<std::int64_t>();
      }
    }
    if (negative) coeff = -coeff;
    out += pi_power(ctx, power) * coeff;
  }
  return out;
}

ValuedScalar add(const ValuedScalar& x, const ValuedScalar& y) { return x + y; }
ValuedScalar mul(const ValuedScalar& x, const ValuedScalar& y) { return x * y; }

}  // namespace skelcoh
