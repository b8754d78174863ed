#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "skelcoh/error.hpp"
#include "skelcoh/valued_scalar.hpp"

using namespace skelcoh;

namespace {

const ScalarContext Q3 = ScalarContext::make(3, 1);
const ScalarContext Q3e2 = ScalarContext::make(3, 2);

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("contexts") {
  CHECK(code_of([] { ScalarContext::make(4, 1); }) == "InvalidContext");
  CHECK(code_of([] { ScalarContext::make(5, 0); }) == "InvalidContext");
}

TEST_CASE("valuations") {
  CHECK(ValuedScalar(Q3, Rational(18)).valuation() == Valuation(Rational(2)));
  CHECK(ValuedScalar(Q3, Rational(1, 27)).valuation() == Valuation(Rational(-3)));
  CHECK(ValuedScalar(Q3).valuation().is_infinite());
  CHECK(ValuedScalar::pi_power(Q3e2, 3).valuation() == Valuation(Rational(3, 2)));
  // 3 + pi: the pi term wins
  const ValuedScalar x(Q3e2, std::vector<Rational>{Rational(3), Rational(1)});
  CHECK(x.valuation() == Valuation(Rational(1, 2)));
  CHECK(x.leading_index() == 1);
  CHECK(ValuedScalar::p_power(Q3e2, Rational(3, 2)) == ValuedScalar::pi_power(Q3e2, 3));
  CHECK(code_of([] { ValuedScalar::p_power(Q3, Rational(1, 2)); }) == "NotInValueGroup");
  CHECK(Valuation(Rational(1)) < Valuation::infinity());
}

TEST_CASE("arithmetic in Q(pi)") {
  const auto pi = ValuedScalar::pi_power(Q3e2, 1);
  CHECK(pi * pi == ValuedScalar(Q3e2, Rational(3)));
  gen::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sc = gen::random_scalar_context(rng);
    const auto a = gen::random_scalar_of_valuation(rng, sc, rng.uniform(0, 4));
    const auto b = gen::random_scalar_of_valuation(rng, sc, rng.uniform(0, 4));
    CHECK(a * a.inverse() == ValuedScalar(sc, Rational(1)));
    CHECK((a * b).valuation() == a.valuation() + b.valuation());
    CHECK(ValuedScalar::parse(sc, a.str()) == a);
  }
  CHECK(code_of([] { ValuedScalar(Q3).inverse(); }) == "DivisionByZero");
  CHECK(code_of([] { ValuedScalar(Q3, Rational(1)) + ValuedScalar(Q3e2, Rational(1)); }) == "ContextMismatch");
  CHECK(pi.pow(-2) == ValuedScalar(Q3e2, Rational(1, 3)));
}

TEST_CASE("parse") {
  CHECK(ValuedScalar::parse(Q3e2, "2 - 1/2*pi") == ValuedScalar(Q3e2, std::vector<Rational>{Rational(2), Rational(-1, 2)}));
  CHECK(ValuedScalar::parse(Q3e2, "pi^3") == ValuedScalar::pi_power(Q3e2, 3));
  CHECK(ValuedScalar::parse(Q3, "0").is_zero());
  CHECK_THROWS_AS(ValuedScalar::parse(Q3, "2*x"), InputError);
}

TEST_CASE("reduction modulo a precision") {
  // 10 = 1 + 3^2 = 1 mod 9; symmetric representatives
  CHECK(ValuedScalar(Q3, Rational(10)).reduced(Rational(2)) == ValuedScalar(Q3, Rational(1)));
  CHECK(ValuedScalar(Q3, Rational(8)).reduced(Rational(2)) == ValuedScalar(Q3, Rational(-1)));
  CHECK(ValuedScalar(Q3, Rational(27)).reduced(Rational(3)).is_zero());
  CHECK(ValuedScalar(Q3, Rational(1, 2)).reduced(Rational(1)) == ValuedScalar(Q3, Rational(-1)));
  gen::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sc = gen::random_scalar_context(rng);
    const auto a = gen::random_integral(rng, sc);
    const Rational prec(rng.uniform(1, 6));
    const auto r = a.reduced(prec);
    CHECK((a - r).valuation() >= Valuation(prec));
    CHECK(r.reduced(prec) == r);
    CHECK((a + ValuedScalar::p_power(sc, prec)).reduced(prec) == r);
  }
}
