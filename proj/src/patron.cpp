#include "skelcoh/patron.hpp"

#include "skelcoh/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace skelcoh {

namespace {

// Union-find over string ids.
class Components {
 public:
  void add(const std::string& id) { parent_.emplace(id, id); }
  std::string find(const std::string& id) {
    std::string& p = parent_.at(id);
    if (p != id) p = find(p);
    return p;
  }
  void join(const std::string& a, const std::string& b) { parent_[find(a)] = find(b); }
  std::size_t count() {
    std::set<std::string> roots;
    for (auto& [id, _] : parent_) roots.insert(find(id));
    return roots.size();
  }

 private:
  std::map<std::string, std::string> parent_;
};

std::vector<std::string> split_plus(const std::string& id) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : id) {
    if (c == '+') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string fused_id(const std::string& a, const std::string& b) {
  auto parts = split_plus(a);
  auto more = split_plus(b);
  parts.insert(parts.end(), more.begin(), more.end());
  std::sort(parts.begin(), parts.end());
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
  return out;
}

}  // namespace

const Short* Patron::find_short(const std::string& id) const {
  for (const auto& s : shorts)
    if (s.id == id) return &s;
  return nullptr;
}

std::vector<std::string> validate(const Patron& pat) {
  std::vector<std::string> out;
  if (pat.shorts.empty()) out.push_back("patron has no shorts");

  std::set<std::string> short_ids;
  for (const auto& s : pat.shorts) {
    if (!short_ids.insert(s.id).second) out.push_back("duplicate short id '" + s.id + "'");
    if (s.genus < 0) out.push_back("short '" + s.id + "': negative genus");
    if (s.slope_one_dim < 0 || s.slope_one_dim > s.genus)
      out.push_back("short '" + s.id + "': slope-one dimension " + std::to_string(s.slope_one_dim) +
                    " outside [0, " + std::to_string(s.genus) + "]");
  }

  std::set<std::string> edge_ids;
  for (const auto& l : pat.legs)
    if (!edge_ids.insert(l.id).second) out.push_back("duplicate leg/puncture id '" + l.id + "'");
  for (const auto& q : pat.punctures)
    if (!edge_ids.insert(q.id).second) out.push_back("duplicate leg/puncture id '" + q.id + "'");

  bool refs_ok = true;
  for (const auto& l : pat.legs) {
    for (const auto* end : {&l.tail, &l.head})
      if (!short_ids.count(*end)) {
        out.push_back("leg '" + l.id + "': unknown short '" + *end + "'");
        refs_ok = false;
      }
    if (l.length <= 0) out.push_back("leg '" + l.id + "': nonpositive length " + to_string(l.length));
    if (l.tail == l.head) out.push_back("leg '" + l.id + "': loop with 1 vertex");
  }
  for (const auto& q : pat.punctures)
    if (!short_ids.count(q.vertex)) {
      out.push_back("puncture '" + q.id + "': unknown short '" + q.vertex + "'");
      refs_ok = false;
    }

  std::map<std::pair<std::string, std::string>, std::string> seen;
  for (const auto& l : pat.legs) {
    if (l.tail == l.head) continue;
    auto key = std::minmax(l.tail, l.head);
    auto [it, fresh] = seen.emplace(std::pair(key.first, key.second), l.id);
    if (!fresh) out.push_back("legs '" + it->second + "' and '" + l.id + "': loop with 2 vertices");
  }

  if (refs_ok && !pat.shorts.empty()) {
    Components cc;
    for (const auto& s : pat.shorts) cc.add(s.id);
    for (const auto& l : pat.legs) cc.join(l.tail, l.head);
    if (cc.count() != 1) out.push_back("underlying graph is not connected");
  }
  return out;
}

Graph adic_graph(const Patron& pat) {
  auto violations = validate(pat);
  if (!violations.empty()) throw Error("InvalidPatron", violations.front());
  std::vector<Vertex> vertices;
  for (const auto& s : pat.shorts) vertices.push_back({s.id});
  std::vector<Edge> edges;
  for (const auto& l : pat.legs) edges.push_back({l.id, l.tail, l.head, Length::finite(l.length)});
  for (const auto& q : pat.punctures) edges.push_back({q.id, q.vertex, std::nullopt, Length::zero_plus()});
  return Graph(std::move(vertices), std::move(edges));
}

std::int64_t genus(const Patron& pat) {
  const Graph g = adic_graph(pat);
  std::int64_t total = 0;
  for (const auto& s : pat.shorts) total += s.genus;
  return total + cohomology(g, CoeffRing::rationals()).h1_rank();
}

Patron refine_leg(const Patron& pat, const std::string& leg_id, const Rational& mu1) {
  auto it = std::find_if(pat.legs.begin(), pat.legs.end(), [&](const Leg& l) { return l.id == leg_id; });
  if (it == pat.legs.end()) throw Error("UnknownLeg", "no leg '" + leg_id + "'");
  if (mu1 <= 0 || mu1 >= it->length)
    throw Error("BadSplitPoint", "split point " + to_string(mu1) + " not inside (0, " +
                                     to_string(it->length) + ")");
  Patron out = pat;
  const Leg old = *it;
  out.legs.erase(out.legs.begin() + (it - pat.legs.begin()));
  const std::string mid = old.id + "#mid";
  if (pat.find_short(mid)) throw Error("BadSplitPoint", "short id '" + mid + "' already taken");
  out.shorts.push_back({mid, 0, 0});
  out.legs.push_back({old.id + "#1", old.tail, mid, mu1, old.tail_twist, std::nullopt});
  out.legs.push_back({old.id + "#2", mid, old.head, old.length - mu1, std::nullopt, old.head_twist});
  return out;
}

// ---------------------------------------------------------------------------
// Marked curves

MarkedCurve::MarkedCurve(std::vector<Component> components, std::vector<MarkedPoint> points)
    : kind_(Kind::Curve), components_(std::move(components)), points_(std::move(points)) {
  std::sort(components_.begin(), components_.end(),
            [](const Component& a, const Component& b) { return a.id < b.id; });
  std::sort(points_.begin(), points_.end(),
            [](const MarkedPoint& a, const MarkedPoint& b) { return a.id < b.id; });
  std::set<std::string> ids;
  for (const auto& c : components_) {
    if (!ids.insert(c.id).second) throw Error("InvalidCurve", "duplicate component '" + c.id + "'");
    if (c.genus < 0) throw Error("InvalidCurve", "component '" + c.id + "' has negative genus");
  }
  std::set<std::string> pids;
  for (const auto& p : points_) {
    if (!pids.insert(p.id).second) throw Error("InvalidCurve", "duplicate marked point '" + p.id + "'");
    if (p.incident.empty() || p.incident.size() > 2)
      throw Error("InvalidCurve", "marked point '" + p.id + "' needs 1 or 2 incidences");
    for (const auto& c : p.incident)
      if (!ids.count(c)) throw Error("InvalidCurve", "marked point '" + p.id + "' on unknown component '" + c + "'");
    if (p.is_singular() && !p.multiplicity.is_finite())
      throw Error("InvalidCurve", "node '" + p.id + "' needs a positive rational multiplicity");
    if (p.multiplicity.kind() == Length::Kind::ZeroPlus && p.incident.size() != 1)
      throw Error("InvalidCurve", "0+ point '" + p.id + "' must be smooth");
  }
}

MarkedCurve MarkedCurve::single_point() {
  MarkedCurve c;
  c.kind_ = Kind::SinglePoint;
  return c;
}

MarkedCurve MarkedCurve::double_point() {
  MarkedCurve c;
  c.kind_ = Kind::DoublePoint;
  return c;
}

std::int64_t MarkedCurve::valence(const std::string& component_id) const {
  std::int64_t n = 0;
  for (const auto& p : points_)
    n += std::count(p.incident.begin(), p.incident.end(), component_id);
  return n;
}

std::vector<std::string> MarkedCurve::contractible_components() const {
  std::vector<std::string> out;
  if (is_degenerate()) return out;
  for (const auto& c : components_)
    if (c.genus == 0 && valence(c.id) <= 2) out.push_back(c.id);
  return out;
}

bool MarkedCurve::is_stable() const { return contractible_components().empty(); }

MarkedCurve special_fiber(const Patron& pat) {
  auto violations = validate(pat);
  if (!violations.empty()) throw Error("InvalidPatron", violations.front());
  std::vector<Component> comps;
  for (const auto& s : pat.shorts) comps.push_back({s.id, s.genus});
  std::vector<MarkedPoint> points;
  for (const auto& l : pat.legs) points.push_back({l.id, Length::finite(l.length), {l.tail, l.head}});
  for (const auto& q : pat.punctures) points.push_back({q.id, Length::zero_plus(), {q.vertex}});
  return MarkedCurve(std::move(comps), std::move(points));
}

Graph dual_graph(const MarkedCurve& c) {
  if (c.is_degenerate()) throw Error("DegenerateCurve", "a point has no dual graph");
  std::vector<Vertex> vertices;
  for (const auto& comp : c.components()) vertices.push_back({comp.id});
  std::vector<Edge> edges;
  for (const auto& p : c.points()) {
    if (p.is_singular())
      edges.push_back({p.id, p.incident[0], p.incident[1], p.multiplicity});
    else
      edges.push_back({p.id, p.incident[0], std::nullopt, p.multiplicity});
  }
  return Graph(std::move(vertices), std::move(edges));
}

MarkedCurve contract_component(const MarkedCurve& c, const std::string& component_id) {
  auto comp = std::find_if(c.components().begin(), c.components().end(),
                           [&](const Component& x) { return x.id == component_id; });
  if (c.is_degenerate() || comp == c.components().end())
    throw Error("NotContractible", "no component '" + component_id + "'");
  if (comp->genus != 0 || c.valence(component_id) > 2)
    throw Error("NotContractible", "component '" + component_id + "' is not a P1 with <= 2 marks");

  std::vector<MarkedPoint> on, off;
  for (const auto& p : c.points()) {
    if (std::find(p.incident.begin(), p.incident.end(), component_id) != p.incident.end())
      on.push_back(p);
    else
      off.push_back(p);
  }
  std::vector<Component> rest;
  for (const auto& x : c.components())
    if (x.id != component_id) rest.push_back(x);

  auto other_end = [&](const MarkedPoint& p) -> std::optional<std::string> {
    if (!p.is_singular()) return std::nullopt;
    return p.incident[0] == component_id ? p.incident[1] : p.incident[0];
  };

  if (on.empty()) return MarkedCurve::single_point();
  if (on.size() == 1) {
    const MarkedPoint& p = on.front();
    if (!p.is_singular()) return MarkedCurve::single_point();
    if (p.incident[0] == p.incident[1]) return MarkedCurve::double_point();
    // the node becomes an unmarked smooth point of the other component
    return MarkedCurve(std::move(rest), std::move(off));
  }
  // two distinct marks P1, P2 fuse into Q
  const MarkedPoint& p1 = on[0];
  const MarkedPoint& p2 = on[1];
  std::vector<std::string> ends;
  for (const auto* p : {&p1, &p2})
    if (auto o = other_end(*p)) ends.push_back(*o);
  if (ends.empty()) return MarkedCurve::single_point();
  std::sort(ends.begin(), ends.end());
  off.push_back({fused_id(p1.id, p2.id), p1.multiplicity + p2.multiplicity, ends});
  return MarkedCurve(std::move(rest), std::move(off));
}

MarkedCurve stabilize(const MarkedCurve& c) {
  if (!c.is_degenerate()) {
    Components cc;
    for (const auto& x : c.components()) cc.add(x.id);
    for (const auto& p : c.points())
      if (p.is_singular()) cc.join(p.incident[0], p.incident[1]);
    if (cc.count() > 1) throw Error("DisconnectedCurve", "marked curve is not connected");
  }
  MarkedCurve cur = c;
  for (auto ids = cur.contractible_components(); !ids.empty(); ids = cur.contractible_components())
    cur = contract_component(cur, ids.front());
  return cur;
}

bool same_up_to_point_ids(const MarkedCurve& a, const MarkedCurve& b) {
  if (a.kind() != b.kind()) return false;
  if (a.components() != b.components()) return false;
  auto signature = [](const MarkedCurve& c) {
    std::vector<std::pair<std::vector<std::string>, std::string>> sig;
    for (const auto& p : c.points()) {
      auto inc = p.incident;
      std::sort(inc.begin(), inc.end());
      sig.emplace_back(inc, p.multiplicity.str());
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  return signature(a) == signature(b);
}

}  // namespace skelcoh
