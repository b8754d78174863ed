#pragma once

// Graded pieces (dimension, weight, Frobenius slopes, Tate twist) of the
// three-step filtrations on H^1 of a curve built from a patron, together with
// the monodromy operator on the associated graded.
//
// Only the associated graded is modeled. The pieces are, in order,
//   GraphH1      (weight 0)  H^1 of the skeleton (of its interior part for
//                            the separated Hyodo-Kato and de Rham theories),
//   Components   (weight 1)  contributions of the shorts,
//   GraphH1cDual (weight 2)  dual of compactly supported H^1 of the skeleton.
// The monodromy maps GraphH1cDual to GraphH1 and is zero elsewhere.

#include "skelcoh/patron.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skelcoh {

struct Theory {
  enum class Kind { EtaleL, HyodoKatoSep, DeRhamSep, Dagger };
  Kind kind = Kind::EtaleL;
  std::int64_t ell = 0;  // EtaleL only

  static Theory etale(std::int64_t ell) { return {Kind::EtaleL, ell}; }
  static Theory hyodo_kato() { return {Kind::HyodoKatoSep, 0}; }
  static Theory de_rham() { return {Kind::DeRhamSep, 0}; }
  static Theory dagger() { return {Kind::Dagger, 0}; }

  /// "etale:<ell>", "hk", "dr", "dagger".
  static Theory parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const Theory&, const Theory&) = default;
};

enum class PieceLabel { GraphH1, Components, GraphH1cDual };
std::string to_string(PieceLabel label);

/// A Frobenius slope with multiplicity; an empty slope stands for the open
/// band (0, 1) whose individual slopes the patron does not determine.
struct SlopeMultiplicity {
  std::optional<Rational> slope;
  std::int64_t multiplicity = 0;
  friend bool operator==(const SlopeMultiplicity&, const SlopeMultiplicity&) = default;
};

struct GradedPiece {
  PieceLabel label = PieceLabel::GraphH1;
  std::int64_t dimension = 0;
  int weight = 0;
  std::vector<SlopeMultiplicity> slopes;  // Frobenius theories only
  int tate_twist = 0;
  friend bool operator==(const GradedPiece&, const GradedPiece&) = default;
};

/// Per-short slope breakdown of the Components piece (Frobenius theories).
struct ComponentSlopes {
  std::string id;
  bool boundary = false;
  std::int64_t slope_zero = 0;
  std::int64_t band = 0;
  std::int64_t slope_one = 0;
  friend bool operator==(const ComponentSlopes&, const ComponentSlopes&) = default;
};

struct FiltrationReport {
  Theory theory;
  std::array<GradedPiece, 3> pieces;
  std::int64_t total_dimension = 0;
  RatMatrix monodromy;  // GraphH1cDual basis -> GraphH1 basis
  std::vector<ComponentSlopes> component_slopes;
};

/// Error("InvalidPatron") for a patron failing validate(), and
/// Error("InvalidTheory") when ell is not a prime different from the
/// patron's p.
FiltrationReport filtration_report(const Patron& pat, const Theory& th);

/// The monodromy block embedded in the square matrix on the direct sum of
/// the three pieces.
RatMatrix total_monodromy(const Patron& pat, const Theory& th);

/// Restriction H^1(g) -> H^1(sub) for a subgraph sharing edge ids, in the
/// bases of cohomology().
RatMatrix restriction_matrix(const Graph& g, const Graph& sub);

/// t * N_mu(phi) in the Coker basis of H^1 of the adic skeleton. phi is
/// indexed by all skeleton edges (sorted by id) and must lie in Ker d*,
/// else Error("NotInKernel").
RatVector picard_lefschetz_delta(const Patron& pat, const Rational& t, const RatVector& phi);

}  // namespace skelcoh
