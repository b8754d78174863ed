#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "skelcoh/error.hpp"
#include "skelcoh/filtration.hpp"
#include "skelcoh/json_io.hpp"

using namespace skelcoh;

TEST_CASE("graph round trip") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = gen::random_graph(rng, 5, 7, true);
    CHECK(graph_from_json(parse_json(to_json(g).dump())) == g);
  }
}

TEST_CASE("patron round trip") {
  gen::Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Patron p = gen::random_patron(rng, 5, true);
    p.p = 5;
    CHECK(patron_from_json(parse_json(to_json(p).dump())) == p);
    CHECK(validate(patron_from_json(to_json(p))).empty());
  }
  const Json minimal = parse_json(R"({"shorts": [{"id": "s", "genus": 2}]})");
  const Patron m = patron_from_json(minimal);
  CHECK(m.shorts[0].slope_one_dim == 0);
  CHECK(m.legs.empty());
  CHECK_FALSE(m.p);
}

TEST_CASE("curve round trip") {
  gen::Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const MarkedCurve c = gen::random_curve(rng, 4);
    CHECK(curve_from_json(to_json(c)) == c);
  }
  CHECK(curve_from_json(to_json(MarkedCurve::double_point())).kind() == MarkedCurve::Kind::DoublePoint);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_json("{"), InputError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"vertices": []})")), InputError);
  CHECK_THROWS_AS(graph_from_json(parse_json(R"({"vertices": [{"id": 3}], "edges": []})")), InputError);
  CHECK_THROWS_AS(patron_from_json(parse_json(R"({"shorts": [{"id": "s", "genus": "x"}]})")), InputError);
  CHECK_THROWS_AS(patron_from_json(parse_json(R"([1, 2])")), InputError);
  CHECK_THROWS_AS(curve_from_json(parse_json(R"({"kind": "torus"})")), InputError);
}

TEST_CASE("report fields") {
  const Patron tri = patron_from_json(read_json_file(std::string(SKELCOH_TEST_DATA) + "/triangle.json"));
  const Json j = to_json(filtration_report(tri, Theory::hyodo_kato()));
  CHECK(j["theory"] == "hk");
  CHECK(j["total"] == 11);
  CHECK(j["pieces"][1]["label"] == "Components");
  CHECK(j["pieces"][2]["twist"] == -1);
  bool band = false;
  for (const auto& s : j["pieces"][1]["slopes"]) band = band || s["slope"] == "(0,1)";
  CHECK(band);
  CHECK(j["monodromy"]["rows"] == 0);

  const auto sc = ScalarContext::make(5, 1);
  const LaurentSeries f(SeriesContext::make(sc, Rational(4), -1, 2), parse_coefficients(sc, "-1:5,2:1/2"));
  const Json js = to_json(f);
  CHECK(js["coeffs"]["2"] == ValuedScalar(sc, Rational(1, 2)).reduced(Rational(4)).str());
  CHECK(js["prec"] == "4");
  CHECK(js["head_bound"] == "inf");
}
