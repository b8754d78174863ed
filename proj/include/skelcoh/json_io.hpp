#pragma once

// JSON encodings of graphs, patrons, marked curves and reports. Rationals
// travel as strings; objects use sorted keys and arrays follow the sorted id
// order of the library types, so output is byte-stable.
//
// Parsers throw InputError on malformed documents; semantic problems
// (dangling references, bad lengths) surface as the library's Error codes.

#include "skelcoh/filtration.hpp"
#include "skelcoh/graph.hpp"
#include "skelcoh/patron.hpp"
#include "skelcoh/series.hpp"

#include <json.hpp>

#include <string>

namespace skelcoh {

using Json = nlohmann::json;

/// Parses text, mapping syntax errors to InputError.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Graph graph_from_json(const Json& j);
Json to_json(const Graph& g);

Patron patron_from_json(const Json& j);
Json to_json(const Patron& pat);

/// {"kind":"curve","components":[...],"marked_points":[...]} or
/// {"kind":"single_point"} / {"kind":"double_point"}.
MarkedCurve curve_from_json(const Json& j);
Json to_json(const MarkedCurve& c);

Json to_json(const ModuleSummary& m);
Json to_json(const CohomologyReport& r);
/// {"rows","cols","entries"} with entries as rational strings, row-major.
Json to_json(const RatMatrix& m);
Json to_json(const FiltrationReport& r);

Json to_json(const ValuedScalar& x);
/// {"coeffs":{"n":"value"},"prec","n_min","n_max","head_bound"}.
Json to_json(const LaurentSeries& f);
Json to_json(const NewtonData& nd);
Json to_json(const UnitFactorization& f);

}  // namespace skelcoh
