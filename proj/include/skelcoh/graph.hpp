#pragma once

// Finite semi-metrized oriented graphs and their cohomology.
//
// Vertices and edges are kept sorted by identifier; every matrix below is
// indexed in that order. Edges may miss one endpoint ("dangling" edges); an
// edge is relatively compact when both endpoints are present. Loops are
// allowed.

#include "skelcoh/linalg.hpp"
#include "skelcoh/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skelcoh {

/// Edge length in the extended set {q, q+, q++, inf, inf+, 2inf}.
class Length {
 public:
  enum class Kind { Finite, ZeroPlus, FinitePlus, FinitePlusPlus, Infinity, InfinityPlus, TwoInfinity };

  /// q > 0, else Error("InvalidLength").
  static Length finite(const Rational& q);
  static Length zero_plus() { return Length(Kind::ZeroPlus, Rational(0)); }
  /// q >= 0; q = 0 yields zero_plus().
  static Length finite_plus(const Rational& q);
  static Length finite_plus_plus(const Rational& q);
  static Length infinity() { return Length(Kind::Infinity, Rational(0)); }
  static Length infinity_plus() { return Length(Kind::InfinityPlus, Rational(0)); }
  static Length two_infinity() { return Length(Kind::TwoInfinity, Rational(0)); }

  Kind kind() const { return kind_; }
  /// The rational part (0 for the infinite kinds).
  const Rational& value() const { return q_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const {
    return kind_ == Kind::Infinity || kind_ == Kind::InfinityPlus || kind_ == Kind::TwoInfinity;
  }

  /// "3/2", "0+", "q+", "q++", "inf", "inf+", "2inf".
  std::string str() const;
  static Length parse(std::string_view text);

  /// Concatenation of two segments: rational parts add, open ends accumulate
  /// (capped at two), and any infinite length absorbs (a + inf = inf).
  friend Length operator+(const Length& a, const Length& b);
  friend bool operator==(const Length& a, const Length& b) {
    return a.kind_ == b.kind_ && a.q_ == b.q_;
  }

 private:
  Length(Kind k, Rational q) : kind_(k), q_(std::move(q)) {}
  Kind kind_;
  Rational q_;
};

struct Vertex {
  std::string id;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  std::string id;
  std::optional<std::string> tail;
  std::optional<std::string> head;
  Length length = Length::zero_plus();

  bool is_compact() const { return tail.has_value() && head.has_value(); }
  bool is_loop() const { return is_compact() && *tail == *head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;
  /// Sorts by id and checks: unique ids, at least one endpoint per edge,
  /// endpoints exist. Throws Error("InvalidGraph").
  Graph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Positions (in edges()) of the relatively compact edges.
  const std::vector<Index>& compact_edges() const { return compact_; }

  Index vertex_index(const std::string& id) const;
  std::optional<Index> find_edge(const std::string& id) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Index> compact_;
};

struct CoeffRing {
  enum class Kind { Integers, Rationals, IntegersMod };
  Kind kind = Kind::Rationals;
  std::int64_t modulus = 0;

  static CoeffRing integers() { return {Kind::Integers, 0}; }
  static CoeffRing rationals() { return {Kind::Rationals, 0}; }
  /// n >= 2, else Error("InvalidRing").
  static CoeffRing integers_mod(std::int64_t n);
  /// "Z", "Q", "Z/n".
  static CoeffRing parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const CoeffRing&, const CoeffRing&) = default;
};

/// A finitely generated module over the coefficient ring, written as
/// free part plus cyclic torsion summands Z/d (d > 1, and d < n over Z/n).
struct ModuleSummary {
  Index rank = 0;
  std::vector<Integer> torsion;
  friend bool operator==(const ModuleSummary&, const ModuleSummary&) = default;
};

struct CohomologyReport {
  CoeffRing ring;
  ModuleSummary h0;        // Ker[d : L^S -> L^{A_c}]
  ModuleSummary h1;        // Coker[d : L^S -> L^{A_c}]
  ModuleSummary h0c;       // Ker[d_c : L^(S) -> L^(A)]
  ModuleSummary h1c;       // Coker[d_c : L^(S) -> L^(A)]
  ModuleSummary h1c_dual;  // Ker[d* : L^A -> L^S]

  std::vector<std::string> compact_edge_ids;  // row labels of coker_basis
  std::vector<std::string> edge_ids;          // row labels of ker_basis
  RatMatrix coker_basis;  // columns: standard vectors e_a spanning Coker d
  RatMatrix ker_basis;    // columns: standard nullspace basis of d*

  Index h0_rank() const { return h0.rank; }
  Index h1_rank() const { return h1.rank; }
  Index h0c_rank() const { return h0c.rank; }
  Index h1c_rank() const { return h1c.rank; }
  Index h1c_dual_rank() const { return h1c_dual.rank; }
};

/// Rows: compact edges; columns: vertices. row(a) = e_head - e_tail.
IntMatrix boundary_matrix(const Graph& g);
/// Rows: all edges; an absent endpoint contributes 0.
IntMatrix boundary_matrix_compact_support(const Graph& g);
/// Rows: vertices; columns: all edges. entry(s, a) = [tail = s] - [head = s].
IntMatrix coboundary_matrix(const Graph& g);

/// Ker/Coker of the three matrices above over the ring. Bases are computed
/// over Q and are integral (incidence matrices are totally unimodular).
CohomologyReport cohomology(const Graph& g, CoeffRing ring);

/// h0c - h0 + |A \ A_c| - h1c + h1 == 0 over Q.
bool exact_sequence_check(const Graph& g);

/// Projection L^{A_c} -> H^1(g) in the coordinates of the cohomology() basis.
class H1Projector {
 public:
  explicit H1Projector(const Graph& g);
  RatVector coordinates(const RatVector& edge_function) const;
  Index dimension() const { return static_cast<Index>(free_.size()); }
  const std::vector<Index>& basis_positions() const { return free_; }

 private:
  EchelonForm<Rational> image_;
  std::vector<Index> free_;
};

/// Matrix of N_mu from the Ker d* basis to the Coker d basis. Errors:
/// NonRationalLength (a compact edge without finite length) and
/// LengthNotInRing (non-integer length over Z or Z/n). Over Z/n entries are
/// reduced into [0, n).
RatMatrix monodromy_matrix(const Graph& g, CoeffRing ring);

/// Least common multiple of the denominators of all finite compact lengths.
Integer length_denominator_lcm(const Graph& g);
/// Multiplies every finite compact length by `factor` (> 0).
Graph scale_lengths(const Graph& g, const Rational& factor);

/// Puts a midpoint "<a>#m" on every compact edge a, with halves "<a>#1"
/// (from the tail) and "<a>#2" (from the head), both oriented toward it.
Graph subdivide(const Graph& g);

/// Deletes 0+ and 0++ edges, turns q+ danglers (q > 0) into compact edges to a
/// fresh leaf "<a>#leaf", and sets inf/inf+ danglers to inf. Rejects 2inf with
/// Error("UnsupportedLength").
Graph separate(const Graph& g);

/// Removes every vertex incident to a 0+ edge and keeps the compact edges
/// between the remaining vertices.
Graph interior_subgraph(const Graph& g);

}  // namespace skelcoh
