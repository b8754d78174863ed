#include "skelcoh/json_io.hpp"

#include "skelcoh/error.hpp"

#include <fstream>
#include <sstream>

namespace skelcoh {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

std::string get_string(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> get_optional_string(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::int64_t get_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

const Json& get_array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  return v;
}

// Lengths and rationals are strings; bare integers are accepted too.
std::string rational_text(const Json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw InputError(std::string("field '") + key + "' must be a rational string");
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Graph graph_from_json(const Json& j) {
  std::vector<Vertex> vertices;
  for (const auto& v : get_array(j, "vertices")) vertices.push_back({get_string(v, "id")});
  std::vector<Edge> edges;
  for (const auto& e : get_array(j, "edges")) {
    Edge edge{get_string(e, "id"), get_optional_string(e, "tail"), get_optional_string(e, "head"),
              Length::parse(rational_text(field(e, "length"), "length"))};
    edges.push_back(std::move(edge));
  }
  return Graph(std::move(vertices), std::move(edges));
}

Json to_json(const Graph& g) {
  Json vs = Json::array();
  for (const auto& v : g.vertices()) vs.push_back({{"id", v.id}});
  Json es = Json::array();
  for (const auto& e : g.edges()) {
    Json je = {{"id", e.id}, {"length", e.length.str()}};
    if (e.tail) je["tail"] = *e.tail;
    if (e.head) je["head"] = *e.head;
    es.push_back(std::move(je));
  }
  return {{"vertices", vs}, {"edges", es}};
}

Patron patron_from_json(const Json& j) {
  Patron pat;
  if (!j.is_object()) throw InputError("expected a JSON object");
  if (auto it = j.find("p"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw InputError("field 'p' must be an integer");
    pat.p = it->get<std::int64_t>();
  }
  for (const auto& s : get_array(j, "shorts"))
    pat.shorts.push_back({get_string(s, "id"), get_int(s, "genus"),
                          s.contains("slope_one_dim") ? get_int(s, "slope_one_dim") : 0});
  if (j.contains("legs"))
    for (const auto& l : get_array(j, "legs"))
      pat.legs.push_back({get_string(l, "id"), get_string(l, "tail"), get_string(l, "head"),
                          parse_rational(rational_text(field(l, "length"), "length")),
                          get_optional_string(l, "tail_twist"), get_optional_string(l, "head_twist")});
  if (j.contains("punctures"))
    for (const auto& q : get_array(j, "punctures"))
      pat.punctures.push_back({get_string(q, "id"), get_string(q, "vertex")});
  return pat;
}

Json to_json(const Patron& pat) {
  Json shorts = Json::array(), legs = Json::array(), punctures = Json::array();
  auto by_id = [](const auto& xs) {
    auto out = xs;
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
  };
  for (const auto& s : by_id(pat.shorts))
    shorts.push_back({{"id", s.id}, {"genus", s.genus}, {"slope_one_dim", s.slope_one_dim}});
  for (const auto& l : by_id(pat.legs)) {
    Json jl = {{"id", l.id}, {"tail", l.tail}, {"head", l.head}, {"length", to_string(l.length)}};
    if (l.tail_twist) jl["tail_twist"] = *l.tail_twist;
    if (l.head_twist) jl["head_twist"] = *l.head_twist;
    legs.push_back(std::move(jl));
  }
  for (const auto& q : by_id(pat.punctures)) punctures.push_back({{"id", q.id}, {"vertex", q.vertex}});
  Json out = {{"shorts", shorts}, {"legs", legs}, {"punctures", punctures}};
  if (pat.p) out["p"] = *pat.p;
  return out;
}

MarkedCurve curve_from_json(const Json& j) {
  const std::string kind = j.contains("kind") ? get_string(j, "kind") : "curve";
  if (kind == "single_point") return MarkedCurve::single_point();
  if (kind == "double_point") return MarkedCurve::double_point();
  if (kind != "curve") throw InputError("unknown curve kind '" + kind + "'");
  std::vector<Component> comps;
  for (const auto& c : get_array(j, "components")) comps.push_back({get_string(c, "id"), get_int(c, "genus")});
  std::vector<MarkedPoint> points;
  if (j.contains("marked_points")) {
    for (const auto& p : get_array(j, "marked_points")) {
      MarkedPoint mp{get_string(p, "id"), Length::parse(rational_text(field(p, "multiplicity"), "multiplicity")), {}};
      for (const auto& c : get_array(p, "incident")) {
        if (!c.is_string()) throw InputError("incident entries must be component ids");
        mp.incident.push_back(c.get<std::string>());
      }
      points.push_back(std::move(mp));
    }
  }
  return MarkedCurve(std::move(comps), std::move(points));
}

Json to_json(const MarkedCurve& c) {
  switch (c.kind()) {
    case MarkedCurve::Kind::SinglePoint: return {{"kind", "single_point"}};
    case MarkedCurve::Kind::DoublePoint: return {{"kind", "double_point"}};
    case MarkedCurve::Kind::Curve: break;
  }
  Json comps = Json::array(), points = Json::array();
  for (const auto& comp : c.components()) comps.push_back({{"id", comp.id}, {"genus", comp.genus}});
  for (const auto& p : c.points())
    points.push_back({{"id", p.id}, {"multiplicity", p.multiplicity.str()}, {"incident", p.incident}});
  return {{"kind", "curve"}, {"components", comps}, {"marked_points", points}};
}

Json to_json(const ModuleSummary& m) {
  Json torsion = Json::array();
  for (const auto& d : m.torsion) torsion.push_back(d.str());
  return {{"rank", m.rank}, {"torsion", torsion}};
}

Json to_json(const RatMatrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json to_json(const CohomologyReport& r) {
  return {{"ring", r.ring.str()},
          {"h0", to_json(r.h0)},
          {"h1", to_json(r.h1)},
          {"h0c", to_json(r.h0c)},
          {"h1c", to_json(r.h1c)},
          {"h1c_dual", to_json(r.h1c_dual)},
          {"compact_edge_ids", r.compact_edge_ids},
          {"edge_ids", r.edge_ids},
          {"coker_basis", to_json(r.coker_basis)},
          {"ker_basis", to_json(r.ker_basis)}};
}

Json to_json(const FiltrationReport& r) {
  Json pieces = Json::array();
  for (const auto& piece : r.pieces) {
    Json slopes = Json::array();
    for (const auto& s : piece.slopes)
      slopes.push_back({{"slope", s.slope ? Json(to_string(*s.slope)) : Json("(0,1)")},
                        {"multiplicity", s.multiplicity}});
    pieces.push_back({{"label", to_string(piece.label)},
                      {"dimension", piece.dimension},
                      {"weight", piece.weight},
                      {"slopes", slopes},
                      {"twist", piece.tate_twist}});
  }
  Json comps = Json::array();
  for (const auto& c : r.component_slopes)
    comps.push_back({{"id", c.id},
                     {"boundary", c.boundary},
                     {"slope_zero", c.slope_zero},
                     {"band", c.band},
                     {"slope_one", c.slope_one}});
  return {{"theory", r.theory.str()},
          {"pieces", pieces},
          {"total", r.total_dimension},
          {"monodromy", to_json(r.monodromy)},
          {"component_slopes", comps}};
}

Json to_json(const ValuedScalar& x) { return x.str(); }

Json to_json(const LaurentSeries& f) {
  Json coeffs = Json::object();
  for (const auto& [n, c] : f.coeffs()) coeffs[std::to_string(n)] = c.str();
  return {{"coeffs", coeffs},
          {"prec", to_string(f.prec())},
          {"n_min", f.n_min()},
          {"n_max", f.n_max()},
          {"head_bound", f.head_bound().str()}};
}

Json to_json(const NewtonData& nd) { return {{"v", to_string(nd.v)}, {"v_prime", nd.v_prime}}; }

Json to_json(const UnitFactorization& f) {
  return {{"c", to_json(f.c)}, {"k", f.k}, {"u_plus", to_json(f.u_plus)}, {"u_minus", to_json(f.u_minus)}};
}

}  // namespace skelcoh
