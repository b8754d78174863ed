#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "skelcoh/error.hpp"
#include "skelcoh/graph.hpp"

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

Graph cycle(const std::vector<Rational>& lengths) {
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  const auto n = static_cast<std::int64_t>(lengths.size());
  for (std::int64_t i = 0; i < n; ++i) vs.push_back({gen::id("v", i)});
  for (std::int64_t i = 0; i < n; ++i)
    es.push_back({gen::id("e", i), gen::id("v", i), gen::id("v", (i + 1) % n), Length::finite(lengths[i])});
  return Graph(vs, es);
}

std::int64_t ipow(std::int64_t b, Index e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("lengths") {
  for (const char* s : {"3/2", "0+", "1/2+", "2++", "inf", "inf+", "2inf"}) CHECK(Length::parse(s).str() == s);
  CHECK(Length::finite_plus(Rational(0)) == Length::zero_plus());
  CHECK(Length::finite(Rational(1)) + Length::finite(Rational(1, 2)) == Length::finite(Rational(3, 2)));
  CHECK(Length::finite(Rational(1)) + Length::zero_plus() == Length::finite_plus(Rational(1)));
  CHECK(Length::finite_plus(Rational(1)) + Length::zero_plus() == Length::finite_plus_plus(Rational(1)));
  CHECK(Length::finite(Rational(1)) + Length::infinity() == Length::infinity());
  CHECK(code_of([] { Length::finite(Rational(0)); }) == "InvalidLength");
  CHECK_THROWS_AS(Length::parse("abc"), InputError);
}

TEST_CASE("graph validation") {
  CHECK(code_of([] { Graph({{"a"}, {"a"}}, {}); }) == "InvalidGraph");
  CHECK(code_of([] { Graph({{"a"}}, {{"e", "a", "b", Length::finite(Rational(1))}}); }) == "InvalidGraph");
  CHECK(code_of([] { Graph({{"a"}}, {{"e", std::nullopt, std::nullopt, Length::zero_plus()}}); }) == "InvalidGraph");
  const Graph g({{"b"}, {"a"}}, {{"e", "b", "a", Length::finite(Rational(1))}});
  CHECK(g.vertices()[0].id == "a");
  CHECK(g.vertex_index("b") == 1);
  CHECK_FALSE(g.find_edge("x"));
}

TEST_CASE("matrices on the 3-cycle") {
  const Graph g = cycle({Rational(1), Rational(1), Rational(1)});
  const IntMatrix d = boundary_matrix(g);
  CHECK(d(0, 0) == -1);
  CHECK(d(0, 1) == 1);
  CHECK(coboundary_matrix(g) == IntMatrix(-d.transpose()));
  const auto rep = cohomology(g, CoeffRing::integers());
  CHECK(rep.h0 == ModuleSummary{1, {}});
  CHECK(rep.h1 == ModuleSummary{1, {}});
  CHECK(rep.h0c.rank == 1);
  CHECK(rep.h1c.rank == 1);
}

TEST_CASE("cohomology ranks against the component count") {
  gen::Rng rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = gen::random_graph(rng, 6, 9, true);
    const auto o = oracle::graph_ranks(g);
    for (const auto& ring : {CoeffRing::integers(), CoeffRing::rationals(), CoeffRing::integers_mod(4),
                             CoeffRing::integers_mod(9)}) {
      const auto r = cohomology(g, ring);
      CHECK(r.h0.rank == o.h0);
      CHECK(r.h1.rank == o.h1);
      CHECK(r.h0c.rank == o.h0c);
      CHECK(r.h1c.rank == o.h1c);
      CHECK(r.h1c_dual.rank == o.h1c_dual);
      CHECK(r.h1.torsion.empty());
    }
    CHECK(exact_sequence_check(g));
  }
}

TEST_CASE("kernels over Z/n by enumeration") {
  gen::Rng rng(78);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = gen::random_graph(rng, 3, 4, true);
    for (std::int64_t n : {2, 3, 4}) {
      const auto r = cohomology(g, CoeffRing::integers_mod(n));
      const IntMatrix d = boundary_matrix(g);
      if (d.rows() > 0) CHECK(oracle::count_kernel_mod(d, n) == ipow(n, r.h0.rank));
      CHECK(oracle::count_kernel_mod(coboundary_matrix(g), n) == ipow(n, r.h1c_dual.rank));
    }
  }
}

TEST_CASE("monodromy") {
  CHECK(monodromy_matrix(cycle({Rational(1), Rational(1), Rational(1)}), CoeffRing::integers()) ==
        RatMatrix::Constant(1, 1, Rational(3)));
  const Graph thirds = cycle({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  CHECK(monodromy_matrix(thirds, CoeffRing::rationals()) == RatMatrix::Constant(1, 1, Rational(1)));
  CHECK(code_of([&] { monodromy_matrix(thirds, CoeffRing::integers()); }) == "LengthNotInRing");
  CHECK(length_denominator_lcm(thirds) == 6);
  CHECK(monodromy_matrix(scale_lengths(thirds, Rational(6)), CoeffRing::integers()) ==
        RatMatrix::Constant(1, 1, Rational(6)));
  // Z/4 reduces entries
  CHECK(monodromy_matrix(cycle({Rational(2), Rational(3)}), CoeffRing::integers_mod(4)) ==
        RatMatrix::Constant(1, 1, Rational(1)));
  const Graph inf({{"a"}}, {{"e", "a", "a", Length::infinity()}});
  CHECK(code_of([&] { monodromy_matrix(inf, CoeffRing::rationals()); }) == "NonRationalLength");
}

TEST_CASE("monodromy against the cycle pairing") {
  gen::Rng rng(79);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = gen::random_connected_compact_graph(rng, 5, 8);
    const auto rep = cohomology(g, CoeffRing::rationals());
    const RatMatrix n = monodromy_matrix(g, CoeffRing::rationals());
    const auto& compact = g.compact_edges();
    for (const auto& gamma : oracle::fundamental_cycles(g))
      for (Index k = 0; k < n.cols(); ++k) {
        Rational expect(0);
        for (std::size_t r = 0; r < compact.size(); ++r)
          expect += gamma(static_cast<Index>(r)) * g.edges()[static_cast<std::size_t>(compact[r])].length.value() *
                    rep.ker_basis(compact[r], k);
        CHECK(gamma.dot(RatVector(rep.coker_basis * n.col(k))) == expect);
      }
  }
}

TEST_CASE("structural transforms") {
  const Graph g({{"a"}, {"b"}},
                {{"e", "a", "b", Length::finite(Rational(2))},
                 {"p", "b", std::nullopt, Length::zero_plus()},
                 {"q", std::nullopt, "a", Length::finite_plus(Rational(1))},
                 {"r", "a", std::nullopt, Length::infinity_plus()}});
  const Graph s = subdivide(g);
  CHECK(s.vertices().size() == 3);
  CHECK(s.find_edge("e#1"));
  CHECK(s.edges()[static_cast<std::size_t>(*s.find_edge("e#2"))].head == std::optional<std::string>("e#m"));

  const Graph sep = separate(g);
  CHECK_FALSE(sep.find_edge("p"));
  const Edge& q = sep.edges()[static_cast<std::size_t>(*sep.find_edge("q"))];
  CHECK(q.is_compact());
  CHECK(q.length == Length::finite(Rational(1)));
  CHECK(sep.edges()[static_cast<std::size_t>(*sep.find_edge("r"))].length == Length::infinity());
  const Graph bad({{"a"}}, {{"x", "a", std::nullopt, Length::two_infinity()}});
  CHECK(code_of([&] { separate(bad); }) == "UnsupportedLength");

  const Graph in = interior_subgraph(g);
  CHECK(in.vertices().size() == 1);
  CHECK(in.edges().empty());
}
