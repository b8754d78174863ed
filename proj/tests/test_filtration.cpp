#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "skelcoh/error.hpp"
#include "skelcoh/filtration.hpp"
#include "skelcoh/json_io.hpp"

using namespace skelcoh;

namespace {

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

Patron load(const char* name) { return patron_from_json(read_json_file(std::string(SKELCOH_TEST_DATA) + "/" + name)); }

std::array<std::int64_t, 3> dims(const FiltrationReport& r) {
  return {r.pieces[0].dimension, r.pieces[1].dimension, r.pieces[2].dimension};
}

std::int64_t slope_total(const GradedPiece& p) {
  std::int64_t s = 0;
  for (const auto& m : p.slopes) s += m.multiplicity;
  return s;
}

}  // namespace

TEST_CASE("theories") {
  CHECK(Theory::parse("etale:7") == Theory::etale(7));
  CHECK(Theory::parse("hk") == Theory::hyodo_kato());
  CHECK(Theory::parse("dr") == Theory::de_rham());
  CHECK(Theory::parse("dagger") == Theory::dagger());
  CHECK(Theory::etale(3).str() == "etale:3");
  CHECK_THROWS_AS(Theory::parse("crystalline"), InputError);
  const Patron tri = load("triangle.json");
  CHECK(code_of([&] { filtration_report(tri, Theory::etale(5)); }) == "InvalidTheory");
  CHECK(code_of([&] { filtration_report(tri, Theory::etale(6)); }) == "InvalidTheory");
  CHECK(code_of([] { filtration_report(load("bad_patron.json"), Theory::hyodo_kato()); }) == "InvalidPatron");
}

TEST_CASE("triangle patron") {
  const Patron tri = load("triangle.json");
  const auto et = filtration_report(tri, Theory::etale(7));
  CHECK(dims(et) == std::array<std::int64_t, 3>{1, 14, 2});
  CHECK(et.total_dimension == 17);
  CHECK(et.pieces[0].weight == 0);
  CHECK(et.pieces[2].weight == 2);
  CHECK(et.pieces[1].slopes.empty());
  CHECK(et.monodromy.rows() == 1);
  CHECK(et.monodromy.cols() == 2);

  const auto hk = filtration_report(tri, Theory::hyodo_kato());
  CHECK(dims(hk) == std::array<std::int64_t, 3>{0, 9, 2});
  CHECK(hk.pieces[2].tate_twist == -1);
  CHECK(hk.monodromy.rows() == 0);
  for (const auto& p : hk.pieces) CHECK(slope_total(p) == p.dimension);
  // s1 interior (g 4, d1 2); s3 on the boundary keeps its slope-1 part only
  const auto& s1 = hk.component_slopes[0];
  CHECK(s1 == ComponentSlopes{"s1", false, 2, 4, 2});
  const auto& s3 = hk.component_slopes[2];
  CHECK(s3 == ComponentSlopes{"s3", true, 0, 0, 1});

  const auto dr = filtration_report(tri, Theory::de_rham());
  CHECK(dims(dr) == dims(hk));
  CHECK(dr.pieces[1].slopes.empty());

  const auto dg = filtration_report(tri, Theory::dagger());
  CHECK(dims(dg) == dims(et));
  CHECK(dg.pieces[1].dimension >= hk.pieces[1].dimension);
}

TEST_CASE("tate patron") {
  const Patron tate = load("tate.json");
  const auto et = filtration_report(tate, Theory::etale(2));
  CHECK(dims(et) == std::array<std::int64_t, 3>{1, 0, 1});
  CHECK(et.total_dimension == 2 * genus(tate));
  CHECK(et.monodromy == RatMatrix::Constant(1, 1, Rational(3)));
  const RatMatrix total = total_monodromy(tate, Theory::etale(2));
  CHECK(total.rows() == 2);
  CHECK(total(0, 1) == Rational(3));
  CHECK((total * total).isZero());
  for (const auto& th : {Theory::hyodo_kato(), Theory::de_rham(), Theory::dagger()})
    CHECK(dims(filtration_report(tate, th)) == dims(et));
}

TEST_CASE("dimension identities on random patrons") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const Patron pat = gen::random_patron(rng, 6, true);
    const auto et = filtration_report(pat, Theory::etale(7));
    const auto hk = filtration_report(pat, Theory::hyodo_kato());
    const auto dg = filtration_report(pat, Theory::dagger());
    CHECK(dims(filtration_report(pat, Theory::de_rham())) == dims(hk));
    CHECK(dg.pieces[1].dimension >= hk.pieces[1].dimension);
    bool strict = false;
    for (const auto& c : hk.component_slopes) {
      const Short* s = pat.find_short(c.id);
      if (c.boundary) strict = strict || s->genus > 0;
      else CHECK(c.slope_zero == c.slope_one);
    }
    CHECK((dg.pieces[1].dimension > hk.pieces[1].dimension) == strict);
    if (pat.punctures.empty()) {
      CHECK(et.total_dimension == 2 * genus(pat));
      CHECK(hk.total_dimension == et.total_dimension);
      CHECK(rank(et.monodromy) == et.monodromy.rows());
    }
  }
}

TEST_CASE("restriction to a subgraph") {
  const Patron tri = load("triangle.json");
  const Graph adic = adic_graph(tri);
  const RatMatrix id = restriction_matrix(adic, adic);
  CHECK(id == RatMatrix::Identity(id.rows(), id.cols()));
  CHECK(restriction_matrix(adic, interior_subgraph(adic)).rows() == 0);
}

TEST_CASE("picard-lefschetz") {
  const Patron tate = load("tate.json");
  RatVector circulation(3);
  circulation << Rational(1), Rational(1), Rational(1);
  CHECK(picard_lefschetz_delta(tate, Rational(1), circulation) == RatVector::Constant(1, Rational(3)));
  CHECK(picard_lefschetz_delta(tate, Rational(0), circulation).isZero());
  CHECK(picard_lefschetz_delta(tate, Rational(-2, 3), circulation) == RatVector::Constant(1, Rational(-2)));
  RatVector off(3);
  off << Rational(1), Rational(0), Rational(0);
  CHECK(code_of([&] { picard_lefschetz_delta(tate, Rational(1), off); }) == "NotInKernel");
  CHECK(code_of([&] { picard_lefschetz_delta(tate, Rational(1), RatVector(2)); }) == "NotInKernel");
}
