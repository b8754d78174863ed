#pragma once

// Curve patrons (shorts glued along legs, with punctures), their special
// fibers as marked curves, dual graphs, and contraction to the stable model.

#include "skelcoh/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace skelcoh {

/// Good-reduction piece: genus g of the reduction and d1 = dim of the
/// slope-1 part of its rigid H^1, 0 <= d1 <= g.
struct Short {
  std::string id;
  std::int64_t genus = 0;
  std::int64_t slope_one_dim = 0;
  friend bool operator==(const Short&, const Short&) = default;
};

/// Open annulus of width `length` glued to two shorts. The twist fields hold
/// the gluing data opaquely; no computation reads them.
struct Leg {
  std::string id;
  std::string tail;
  std::string head;
  Rational length;
  std::optional<std::string> tail_twist;
  std::optional<std::string> head_twist;
  friend bool operator==(const Leg&, const Leg&) = default;
};

/// A removed disk on a short: a 0+ edge of the adic skeleton.
struct Puncture {
  std::string id;
  std::string vertex;
  friend bool operator==(const Puncture&, const Puncture&) = default;
};

struct Patron {
  std::optional<std::int64_t> p;
  std::vector<Short> shorts;
  std::vector<Leg> legs;
  std::vector<Puncture> punctures;

  const Short* find_short(const std::string& id) const;
  friend bool operator==(const Patron&, const Patron&) = default;
};

/// Empty when all invariants hold: unique ids, referential integrity,
/// 0 <= d1 <= g, positive leg lengths, no loop with 1 or 2 vertices,
/// connected underlying graph.
std::vector<std::string> validate(const Patron& pat);

/// The adic skeleton: shorts as vertices, legs as compact edges of their
/// length, punctures as 0+ edges leaving their short. Error("InvalidPatron")
/// when validate() fails.
Graph adic_graph(const Patron& pat);

/// Sum of the short genera plus the first Betti number of the skeleton.
std::int64_t genus(const Patron& pat);

/// Splits a leg at mu1 (0 < mu1 < length) through a new genus-0 short
/// "<leg>#mid", with legs "<leg>#1" (length mu1) and "<leg>#2".
/// Error("BadSplitPoint") / Error("UnknownLeg").
Patron refine_leg(const Patron& pat, const std::string& leg_id, const Rational& mu1);

struct Component {
  std::string id;
  std::int64_t genus = 0;
  friend bool operator==(const Component&, const Component&) = default;
};

/// A marked point; two incidences make it a node (equal ids for a
/// self-intersection), one incidence makes it a smooth point.
struct MarkedPoint {
  std::string id;
  Length multiplicity = Length::zero_plus();
  std::vector<std::string> incident;

  bool is_singular() const { return incident.size() == 2; }
  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

class MarkedCurve {
 public:
  enum class Kind { Curve, SinglePoint, DoublePoint };

  MarkedCurve() = default;
  /// Sorts by id and checks referential integrity, incidence counts, and that
  /// nodes carry finite multiplicities. Throws Error("InvalidCurve").
  MarkedCurve(std::vector<Component> components, std::vector<MarkedPoint> points);
  static MarkedCurve single_point();
  static MarkedCurve double_point();

  Kind kind() const { return kind_; }
  bool is_degenerate() const { return kind_ != Kind::Curve; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<MarkedPoint>& points() const { return points_; }

  /// Marked points on a component counted with multiplicity (a self-node
  /// counts twice).
  std::int64_t valence(const std::string& component_id) const;
  /// Genus-0 components with at most two marked points, in id order.
  std::vector<std::string> contractible_components() const;
  /// No contractible component; degenerate curves count as stable.
  bool is_stable() const;

  friend bool operator==(const MarkedCurve&, const MarkedCurve&) = default;

 private:
  Kind kind_ = Kind::Curve;
  std::vector<Component> components_;
  std::vector<MarkedPoint> points_;
};

/// One component per short, one node per leg (multiplicity = length), one
/// 0+ smooth point per puncture.
MarkedCurve special_fiber(const Patron& pat);

/// Components become vertices, nodes compact edges, smooth marked points
/// dangling edges. Error("DegenerateCurve") on a point or double point.
Graph dual_graph(const MarkedCurve& c);

/// Contracts one genus-0 component with at most two marked points:
/// - no mark, or only smooth marks: the curve is that P^1 and becomes a point;
/// - one node to another component: the node becomes an unmarked point there;
/// - a self-node: the curve becomes a double point;
/// - two marks P1, P2: they fuse into one mark of multiplicity mu(P1)+mu(P2)
///   whose id joins the sorted constituent ids with '+'.
/// Error("NotContractible") otherwise.
MarkedCurve contract_component(const MarkedCurve& c, const std::string& component_id);

/// Contracts until stable, always picking the smallest contractible id.
/// Error("DisconnectedCurve") if the curve is not connected.
MarkedCurve stabilize(const MarkedCurve& c);

/// Equality after forgetting marked-point identifiers and node orientation.
bool same_up_to_point_ids(const MarkedCurve& a, const MarkedCurve& b);

}  // namespace skelcoh
