#include "skelcoh/filtration.hpp"

#include "skelcoh/error.hpp"

#include <set>

namespace skelcoh {

Theory Theory::parse(std::string_view text) {
  if (text == "hk") return hyodo_kato();
  if (text == "dr") return de_rham();
  if (text == "dagger") return dagger();
  if (text.substr(0, 6) == "etale:") {
    Rational ell = parse_rational(text.substr(6));
    if (!is_integer(ell)) throw InputError("ell must be an integer");
    return etale(boost::multiprecision::numerator(ell).convert_to<std::int64_t>());
  }
  throw InputError("unknown theory '" + std::string(text) + "' (expected etale:<ell>, hk, dr, dagger)");
}

std::string Theory::str() const {
  switch (kind) {
    case Kind::EtaleL: return "etale:" + std::to_string(ell);
    case Kind::HyodoKatoSep: return "hk";
    case Kind::DeRhamSep: return "dr";
    case Kind::Dagger: return "dagger";
  }
  return {};
}

std::string to_string(PieceLabel label) {
  switch (label) {
    case PieceLabel::GraphH1: return "GraphH1";
    case PieceLabel::Components: return "Components";
    case PieceLabel::GraphH1cDual: return "GraphH1cDual";
  }
  return {};
}

namespace {

void check_theory(const Patron& pat, const Theory& th) {
  if (th.kind != Theory::Kind::EtaleL) return;
  if (!is_prime(th.ell)) throw Error("InvalidTheory", "ell = " + std::to_string(th.ell) + " is not prime");
  if (pat.p && *pat.p == th.ell) throw Error("InvalidTheory", "ell must differ from p");
}

std::vector<SlopeMultiplicity> profile(std::int64_t zero, std::int64_t band, std::int64_t one) {
  std::vector<SlopeMultiplicity> out;
  if (zero > 0) out.push_back({Rational(0), zero});
  if (band > 0) out.push_back({std::nullopt, band});
  if (one > 0) out.push_back({Rational(1), one});
  return out;
}

bool uses_interior(const Theory& th) {
  return th.kind == Theory::Kind::HyodoKatoSep || th.kind == Theory::Kind::DeRhamSep;
}

bool has_frobenius(const Theory& th) {
  return th.kind == Theory::Kind::HyodoKatoSep || th.kind == Theory::Kind::Dagger;
}

}  // namespace

RatMatrix restriction_matrix(const Graph& g, const Graph& sub) {
  H1Projector from(g);
  H1Projector to(sub);
  RatMatrix r = RatMatrix::Zero(to.dimension(), from.dimension());
  const auto& sub_compact = sub.compact_edges();
  for (std::size_t k = 0; k < from.basis_positions().size(); ++k) {
    const Index pos = g.compact_edges()[static_cast<std::size_t>(from.basis_positions()[k])];
    const std::string& id = g.edges()[static_cast<std::size_t>(pos)].id;
    RatVector v = RatVector::Zero(static_cast<Index>(sub_compact.size()));
    for (std::size_t j = 0; j < sub_compact.size(); ++j)
      if (sub.edges()[static_cast<std::size_t>(sub_compact[j])].id == id) v(static_cast<Index>(j)) = 1;
    r.col(static_cast<Index>(k)) = to.coordinates(v);
  }
  return r;
}

FiltrationReport filtration_report(const Patron& pat, const Theory& th) {
  check_theory(pat, th);
  const Graph gamma = adic_graph(pat);
  const auto coh = cohomology(gamma, CoeffRing::rationals());

  std::set<std::string> boundary;
  for (const auto& q : pat.punctures) boundary.insert(q.vertex);

  FiltrationReport rep;
  rep.theory = th;
  auto& [graph_piece, comp_piece, dual_piece] = rep.pieces;
  graph_piece.label = PieceLabel::GraphH1;
  graph_piece.weight = 0;
  comp_piece.label = PieceLabel::Components;
  comp_piece.weight = 1;
  dual_piece.label = PieceLabel::GraphH1cDual;
  dual_piece.weight = 2;
  dual_piece.dimension = coh.h1c_dual_rank();

  RatMatrix n = monodromy_matrix(gamma, CoeffRing::rationals());
  if (uses_interior(th)) {
    const Graph interior = interior_subgraph(gamma);
    graph_piece.dimension = cohomology(interior, CoeffRing::rationals()).h1_rank();
    n = restriction_matrix(gamma, interior) * n;
  } else {
    graph_piece.dimension = coh.h1_rank();
  }
  rep.monodromy = n;

  const bool separated = uses_interior(th);
  std::int64_t zero = 0, band = 0, one = 0;
  for (const auto& s : pat.shorts) {
    const bool on_boundary = separated && boundary.count(s.id) > 0;
    ComponentSlopes cs{s.id, on_boundary, 0, 0, s.slope_one_dim};
    if (on_boundary) {
      comp_piece.dimension += s.slope_one_dim;
    } else {
      comp_piece.dimension += 2 * s.genus;
      cs.slope_zero = s.slope_one_dim;
      cs.band = 2 * s.genus - 2 * s.slope_one_dim;
    }
    zero += cs.slope_zero;
    band += cs.band;
    one += cs.slope_one;
    if (has_frobenius(th)) rep.component_slopes.push_back(cs);
  }

  switch (th.kind) {
    case Theory::Kind::EtaleL:
      graph_piece.tate_twist = 1;
      comp_piece.tate_twist = 1;
      break;
    case Theory::Kind::HyodoKatoSep:
    case Theory::Kind::Dagger:
      graph_piece.slopes = profile(graph_piece.dimension, 0, 0);
      comp_piece.slopes = profile(zero, band, one);
      dual_piece.slopes = profile(0, 0, dual_piece.dimension);
      dual_piece.tate_twist = -1;
      break;
    case Theory::Kind::DeRhamSep:
      break;
  }

  for (const auto& piece : rep.pieces) rep.total_dimension += piece.dimension;
  return rep;
}

RatMatrix total_monodromy(const Patron& pat, const Theory& th) {
  const auto rep = filtration_report(pat, th);
  const auto d0 = static_cast<Index>(rep.pieces[0].dimension);
  const auto d1 = static_cast<Index>(rep.pieces[1].dimension);
  const auto d2 = static_cast<Index>(rep.pieces[2].dimension);
  const Index total = d0 + d1 + d2;
  RatMatrix m = RatMatrix::Zero(total, total);
  m.block(0, d0 + d1, d0, d2) = rep.monodromy;
  return m;
}

RatVector picard_lefschetz_delta(const Patron& pat, const Rational& t, const RatVector& phi) {
  const Graph gamma = adic_graph(pat);
  if (phi.size() != static_cast<Index>(gamma.edges().size()))
    throw Error("NotInKernel", "phi has " + std::to_string(phi.size()) + " entries, expected " +
                                   std::to_string(gamma.edges().size()));
  const RatVector image = to_rational(coboundary_matrix(gamma)) * phi;
  if (!image.isZero()) throw Error("NotInKernel", "phi is not in the kernel of the coboundary");

  const auto& compact = gamma.compact_edges();
  RatVector weighted(static_cast<Index>(compact.size()));
  for (std::size_t r = 0; r < compact.size(); ++r) {
    const Edge& e = gamma.edges()[static_cast<std::size_t>(compact[r])];
    weighted(static_cast<Index>(r)) = e.length.value() * phi(compact[r]);
  }
  return t * H1Projector(gamma).coordinates(weighted);
}

}  // namespace skelcoh
