#include "skelcoh/graph.hpp"

#include "skelcoh/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace skelcoh {

// ---------------------------------------------------------------------------
// Length

Length Length::finite(const Rational& q) {
  if (q <= 0) throw Error("InvalidLength", "finite length must be positive, got " + to_string(q));
  return Length(Kind::Finite, q);
}

Length Length::finite_plus(const Rational& q) {
  if (q < 0) throw Error("InvalidLength", "q+ needs q >= 0");
  if (q == 0) return zero_plus();
  return Length(Kind::FinitePlus, q);
}

Length Length::finite_plus_plus(const Rational& q) {
  if (q < 0) throw Error("InvalidLength", "q++ needs q >= 0");
  return Length(Kind::FinitePlusPlus, q);
}

std::string Length::str() const {
  switch (kind_) {
    case Kind::Finite: return to_string(q_);
    case Kind::ZeroPlus: return "0+";
    case Kind::FinitePlus: return to_string(q_) + "+";
    case Kind::FinitePlusPlus: return to_string(q_) + "++";
    case Kind::Infinity: return "inf";
    case Kind::InfinityPlus: return "inf+";
    case Kind::TwoInfinity: return "2inf";
  }
  return {};
}

Length Length::parse(std::string_view text) {
  if (text == "inf") return infinity();
  if (text == "inf+") return infinity_plus();
  if (text == "2inf") return two_infinity();
  if (text.size() >= 2 && text.substr(text.size() - 2) == "++")
    return finite_plus_plus(parse_rational(text.substr(0, text.size() - 2)));
  if (!text.empty() && text.back() == '+')
    return finite_plus(parse_rational(text.substr(0, text.size() - 1)));
  Rational q = parse_rational(text);
  if (q <= 0) throw InputError("length must be positive: '" + std::string(text) + "'");
  return finite(q);
}

namespace {

int open_ends(Length::Kind k) {
  switch (k) {
    case Length::Kind::ZeroPlus:
    case Length::Kind::FinitePlus: return 1;
    case Length::Kind::FinitePlusPlus: return 2;
    default: return 0;
  }
}

int infinite_rank(Length::Kind k) {
  switch (k) {
    case Length::Kind::Infinity: return 1;
    case Length::Kind::InfinityPlus: return 2;
    case Length::Kind::TwoInfinity: return 3;
    default: return 0;
  }
}

}  // namespace

Length operator+(const Length& a, const Length& b) {
  const int ia = infinite_rank(a.kind_), ib = infinite_rank(b.kind_);
  if (ia > 0 || ib > 0) return ia >= ib ? a : b;
  const Rational q = a.q_ + b.q_;
  const int ends = std::min(2, open_ends(a.kind_) + open_ends(b.kind_));
  if (ends == 0) return Length::finite(q);
  if (ends == 1) return Length::finite_plus(q);
  return Length::finite_plus_plus(q);
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i].id == vertices_[i - 1].id)
      throw Error("InvalidGraph", "duplicate vertex id '" + vertices_[i].id + "'");
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].id == edges_[i - 1].id)
      throw Error("InvalidGraph", "duplicate edge id '" + edges_[i].id + "'");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!e.tail && !e.head)
      throw Error("InvalidGraph", "edge '" + e.id + "' has no endpoint");
    for (const auto& end : {e.tail, e.head})
      if (end) vertex_index(*end);
    if (e.is_compact()) compact_.push_back(static_cast<Index>(i));
  }
}

Index Graph::vertex_index(const std::string& id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const Vertex& v, const std::string& key) { return v.id < key; });
  if (it == vertices_.end() || it->id != id)
    throw Error("InvalidGraph", "unknown vertex '" + id + "'");
  return static_cast<Index>(it - vertices_.begin());
}

std::optional<Index> Graph::find_edge(const std::string& id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, const std::string& key) { return e.id < key; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<Index>(it - edges_.begin());
}

// ---------------------------------------------------------------------------
// Coefficient rings

CoeffRing CoeffRing::integers_mod(std::int64_t n) {
  if (n < 2) throw Error("InvalidRing", "Z/n needs n >= 2");
  return {Kind::IntegersMod, n};
}

CoeffRing CoeffRing::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.size() > 2 && text.substr(0, 2) == "Z/") {
    Rational n = parse_rational(text.substr(2));
    if (!is_integer(n) || n < 2) throw InputError("bad modulus in '" + std::string(text) + "'");
    return integers_mod(boost::multiprecision::numerator(n).convert_to<std::int64_t>());
  }
  throw InputError("unknown ring '" + std::string(text) + "' (expected Z, Q or Z/n)");
}

std::string CoeffRing::str() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::IntegersMod: return "Z/" + std::to_string(modulus);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Matrices

IntMatrix boundary_matrix(const Graph& g) {
  const auto& compact = g.compact_edges();
  IntMatrix m = IntMatrix::Zero(static_cast<Index>(compact.size()),
                                static_cast<Index>(g.vertices().size()));
  for (std::size_t r = 0; r < compact.size(); ++r) {
    const Edge& e = g.edges()[static_cast<std::size_t>(compact[r])];
    m(static_cast<Index>(r), g.vertex_index(*e.head)) += 1;
    m(static_cast<Index>(r), g.vertex_index(*e.tail)) -= 1;
  }
  return m;
}

IntMatrix boundary_matrix_compact_support(const Graph& g) {
  IntMatrix m = IntMatrix::Zero(static_cast<Index>(g.edges().size()),
                                static_cast<Index>(g.vertices().size()));
  for (std::size_t r = 0; r < g.edges().size(); ++r) {
    const Edge& e = g.edges()[r];
    if (e.head) m(static_cast<Index>(r), g.vertex_index(*e.head)) += 1;
    if (e.tail) m(static_cast<Index>(r), g.vertex_index(*e.tail)) -= 1;
  }
  return m;
}

IntMatrix coboundary_matrix(const Graph& g) {
  IntMatrix m = IntMatrix::Zero(static_cast<Index>(g.vertices().size()),
                                static_cast<Index>(g.edges().size()));
  for (std::size_t c = 0; c < g.edges().size(); ++c) {
    const Edge& e = g.edges()[c];
    if (e.tail) m(g.vertex_index(*e.tail), static_cast<Index>(c)) += 1;
    if (e.head) m(g.vertex_index(*e.head), static_cast<Index>(c)) -= 1;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Cohomology

namespace {

struct KerCoker {
  ModuleSummary ker;
  ModuleSummary coker;
};

void add_cyclic(ModuleSummary& m, const Integer& order, const CoeffRing& ring) {
  if (order == 1) return;
  if (ring.kind == CoeffRing::Kind::IntegersMod && order == ring.modulus) {
    ++m.rank;
    return;
  }
  m.torsion.push_back(order);
}

// Kernel and cokernel of a: L^cols -> L^rows.
KerCoker ker_coker(const IntMatrix& a, const CoeffRing& ring) {
  KerCoker out;
  const Index rows = a.rows(), cols = a.cols();
  if (ring.kind == CoeffRing::Kind::Rationals) {
    const Index r = rank(to_rational(a));
    out.ker.rank = cols - r;
    out.coker.rank = rows - r;
    return out;
  }
  const std::vector<Integer> d = smith_invariants(a);
  const auto r = static_cast<Index>(d.size());
  if (ring.kind == CoeffRing::Kind::Integers) {
    out.ker.rank = cols - r;
    out.coker.rank = rows - r;
    for (const auto& di : d)
      if (di != 1) out.coker.torsion.push_back(di);
    return out;
  }
  const Integer n(ring.modulus);
  out.ker.rank = cols - r;
  out.coker.rank = rows - r;
  for (const auto& di : d) {
    const Integer g = gcd(di, n);
    add_cyclic(out.ker, g, ring);
    add_cyclic(out.coker, g, ring);
  }
  std::sort(out.ker.torsion.begin(), out.ker.torsion.end());
  std::sort(out.coker.torsion.begin(), out.coker.torsion.end());
  return out;
}

}  // namespace

CohomologyReport cohomology(const Graph& g, CoeffRing ring) {
  CohomologyReport rep;
  rep.ring = ring;
  const IntMatrix d = boundary_matrix(g);
  const IntMatrix dc = boundary_matrix_compact_support(g);
  const IntMatrix dstar = coboundary_matrix(g);

  auto kd = ker_coker(d, ring);
  auto kdc = ker_coker(dc, ring);
  auto kds = ker_coker(dstar, ring);
  rep.h0 = kd.ker;
  rep.h1 = kd.coker;
  rep.h0c = kdc.ker;
  rep.h1c = kdc.coker;
  rep.h1c_dual = kds.ker;

  for (Index i : g.compact_edges())
    rep.compact_edge_ids.push_back(g.edges()[static_cast<std::size_t>(i)].id);
  for (const auto& e : g.edges()) rep.edge_ids.push_back(e.id);

  H1Projector proj(g);
  rep.coker_basis = RatMatrix::Zero(d.rows(), proj.dimension());
  for (std::size_t k = 0; k < proj.basis_positions().size(); ++k)
    rep.coker_basis(proj.basis_positions()[k], static_cast<Index>(k)) = 1;
  rep.ker_basis = nullspace(to_rational(dstar));
  return rep;
}

bool exact_sequence_check(const Graph& g) {
  const auto rep = cohomology(g, CoeffRing::rationals());
  const auto dangling = static_cast<Index>(g.edges().size() - g.compact_edges().size());
  return rep.h0c_rank() - rep.h0_rank() + dangling - rep.h1c_rank() + rep.h1_rank() == 0;
}

H1Projector::H1Projector(const Graph& g)
    : image_(reduced_row_echelon(to_rational(boundary_matrix(g)).transpose())),
      free_(non_pivot_columns(image_.pivots, image_.reduced.cols())) {}

RatVector H1Projector::coordinates(const RatVector& edge_function) const {
  RatVector reduced = reduce_modulo_rows(image_, edge_function);
  RatVector out(static_cast<Index>(free_.size()));
  for (std::size_t k = 0; k < free_.size(); ++k) out(static_cast<Index>(k)) = reduced(free_[k]);
  return out;
}

RatMatrix monodromy_matrix(const Graph& g, CoeffRing ring) {
  const auto& compact = g.compact_edges();
  RatVector mu(static_cast<Index>(compact.size()));
  for (std::size_t r = 0; r < compact.size(); ++r) {
    const Edge& e = g.edges()[static_cast<std::size_t>(compact[r])];
    if (!e.length.is_finite())
      throw Error("NonRationalLength",
                  "compact edge '" + e.id + "' has length " + e.length.str());
    if (ring.kind != CoeffRing::Kind::Rationals && !is_integer(e.length.value()))
      throw Error("LengthNotInRing", "length " + e.length.str() + " of edge '" + e.id +
                                         "' is not in " + ring.str());
    mu(static_cast<Index>(r)) = e.length.value();
  }

  const RatMatrix ker = nullspace(to_rational(coboundary_matrix(g)));
  H1Projector proj(g);
  RatMatrix n(proj.dimension(), ker.cols());
  for (Index k = 0; k < ker.cols(); ++k) {
    RatVector weighted(static_cast<Index>(compact.size()));
    for (std::size_t r = 0; r < compact.size(); ++r)
      weighted(static_cast<Index>(r)) = mu(static_cast<Index>(r)) * ker(compact[r], k);
    n.col(k) = proj.coordinates(weighted);
  }
  if (ring.kind == CoeffRing::Kind::IntegersMod) {
    const Integer m(ring.modulus);
    for (Index i = 0; i < n.rows(); ++i)
      for (Index j = 0; j < n.cols(); ++j) {
        Integer v = boost::multiprecision::numerator(n(i, j)) % m;
        if (v < 0) v += m;
        n(i, j) = Rational(v);
      }
  }
  return n;
}

Integer length_denominator_lcm(const Graph& g) {
  Integer l(1);
  for (Index i : g.compact_edges()) {
    const Edge& e = g.edges()[static_cast<std::size_t>(i)];
    if (!e.length.is_finite()) continue;
    const Integer den = boost::multiprecision::denominator(e.length.value());
    l = l / gcd(l, den) * den;
  }
  return l;
}

Graph scale_lengths(const Graph& g, const Rational& factor) {
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges)
    if (e.is_compact() && e.length.is_finite()) e.length = Length::finite(e.length.value() * factor);
  return Graph(g.vertices(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Transforms

Graph subdivide(const Graph& g) {
  std::vector<Vertex> vertices = g.vertices();
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (!e.is_compact()) {
      edges.push_back(e);
      continue;
    }
    if (!e.length.is_finite())
      throw Error("NonRationalLength", "cannot subdivide edge '" + e.id + "' of length " + e.length.str());
    const std::string mid = e.id + "#m";
    const Length half = Length::finite(e.length.value() / 2);
    vertices.push_back({mid});
    edges.push_back({e.id + "#1", e.tail, mid, half});
    edges.push_back({e.id + "#2", e.head, mid, half});
  }
  return Graph(std::move(vertices), std::move(edges));
}

Graph separate(const Graph& g) {
  std::vector<Vertex> vertices = g.vertices();
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    const auto kind = e.length.kind();
    if (kind == Length::Kind::TwoInfinity)
      throw Error("UnsupportedLength", "edge '" + e.id + "' has length 2inf");
    if (kind == Length::Kind::ZeroPlus ||
        (kind == Length::Kind::FinitePlusPlus && e.length.value() == 0))
      continue;
    if (e.is_compact()) {
      edges.push_back(e);
      continue;
    }
    if (kind == Length::Kind::FinitePlus) {
      const std::string leaf = e.id + "#leaf";
      vertices.push_back({leaf});
      Edge c = e;
      if (!c.tail) c.tail = leaf;
      else c.head = leaf;
      c.length = Length::finite(e.length.value());
      edges.push_back(std::move(c));
      continue;
    }
    Edge c = e;
    if (kind == Length::Kind::Infinity || kind == Length::Kind::InfinityPlus) c.length = Length::infinity();
    edges.push_back(std::move(c));
  }
  return Graph(std::move(vertices), std::move(edges));
}

Graph interior_subgraph(const Graph& g) {
  std::set<std::string> boundary;
  for (const auto& e : g.edges()) {
    if (e.length.kind() != Length::Kind::ZeroPlus) continue;
    if (e.tail) boundary.insert(*e.tail);
    if (e.head) boundary.insert(*e.head);
  }
  std::vector<Vertex> vertices;
  for (const auto& v : g.vertices())
    if (!boundary.count(v.id)) vertices.push_back(v);
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (e.is_compact() && !boundary.count(*e.tail) && !boundary.count(*e.head)) edges.push_back(e);
  return Graph(std::move(vertices), std::move(edges));
}

}  // namespace skelcoh
