#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace skelcoh {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

/// Parses "a", "-a", "a/b". Throws InputError on anything else or b == 0.
Rational parse_rational(std::string_view text);

/// "a" when the denominator is 1, else "a/b".
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// Exponent of p in a nonzero integer.
std::int64_t padic_valuation(const Integer& n, std::int64_t p);

/// v_p(q) for nonzero q.
std::int64_t padic_valuation(const Rational& q, std::int64_t p);

bool is_prime(std::int64_t n);

Integer gcd(const Integer& a, const Integer& b);

/// Floor of a rational as a 64-bit integer.
std::int64_t floor_to_int(const Rational& q);

}  // namespace skelcoh
