#include "skelcoh/rational.hpp"

#include "skelcoh/error.hpp"

#include <cctype>

namespace skelcoh {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("not an integer: '" + std::string(s) + "'");
  Integer v{std::string(s)};
  return neg ? Integer(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(trim(text.substr(0, slash)));
  auto den_text = trim(text.substr(slash + 1));
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    throw InputError("sign in denominator: '" + std::string(text) + "'");
  Integer den = parse_integer(den_text);
  if (den == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  if (is_integer(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

std::int64_t padic_valuation(const Integer& n, std::int64_t p) {
  Integer m = abs(n);
  std::int64_t v = 0;
  const Integer pp(p);
  while (m != 0 && m % pp == 0) {
    m /= pp;
    ++v;
  }
  return v;
}

std::int64_t padic_valuation(const Rational& q, std::int64_t p) {
  return padic_valuation(boost::multiprecision::numerator(q), p) -
         padic_valuation(boost::multiprecision::denominator(q), p);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

std::int64_t floor_to_int(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  Integer f = num / den;  // truncates toward zero
  if (num < 0 && f * den != num) f -= 1;
  return f.convert_to<std::int64_t>();
}

}  // namespace skelcoh
