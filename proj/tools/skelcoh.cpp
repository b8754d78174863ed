// skelcoh: command-line front end. Every command prints one JSON document on
// stdout. Exit status 0 on success, 1 on a domain error
// ({"error": code, "detail": ...}), 2 on malformed input.

#include "skelcoh/error.hpp"
#include "skelcoh/filtration.hpp"
#include "skelcoh/graph.hpp"
#include "skelcoh/json_io.hpp"
#include "skelcoh/patron.hpp"
#include "skelcoh/series.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

using namespace skelcoh;

namespace {

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct SeriesArgs {
  std::optional<std::int64_t> p;
  std::string patron;
  std::int64_t ram = 1;
  std::string prec = "12";
  std::string coeffs;
  std::optional<std::int64_t> n_min, n_max;
  std::string mu;
  int side = 2;
  std::int64_t ell = 2;
};

LaurentSeries read_series(const SeriesArgs& a) {
  std::optional<std::int64_t> p = a.p;
  if (!p && !a.patron.empty()) p = patron_from_json(read_json_file(a.patron)).p;
  if (!p) throw InputError("no prime given (use --p, or --patron with a \"p\" field)");
  const ScalarContext sc = ScalarContext::make(*p, a.ram);
  const auto coeffs = parse_coefficients(sc, a.coeffs);
  std::int64_t lo = 0, hi = 0;
  for (const auto& [n, c] : coeffs) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  const auto ctx = SeriesContext::make(sc, parse_rational(a.prec), a.n_min.value_or(lo), a.n_max.value_or(hi));
  return LaurentSeries(ctx, coeffs);
}

Json newton_or_error(const LaurentSeries& f) {
  try {
    return to_json(newton_data(f));
  } catch (const Error& e) {
    return {{"error", e.code()}, {"detail", e.what()}};
  }
}

MarkedCurve read_curve(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("shorts")) return special_fiber(patron_from_json(j));
  return curve_from_json(j);
}

void add_series_options(CLI::App* cmd, SeriesArgs& a) {
  cmd->add_option("--p", a.p, "residue characteristic");
  cmd->add_option("--patron", a.patron, "take p from a patron file");
  cmd->add_option("--ram", a.ram, "ramification index e (pi^e = p)");
  cmd->add_option("--prec", a.prec, "precision M");
  cmd->add_option("--coeffs", a.coeffs, "\"n:value,...\"")->required();
  cmd->add_option("--nmin", a.n_min, "window start");
  cmd->add_option("--nmax", a.n_max, "window end");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of skeleta of p-adic curves and truncated Laurent series"};
  app.require_subcommand(1);
  std::function<Json()> run;

  std::string file, ring = "Q", theory_text;
  bool with_monodromy = false, scale = false;

  auto* coh = app.add_subcommand("cohomology", "graph cohomology over Z, Q or Z/n");
  coh->add_option("file", file, "graph JSON")->required();
  coh->add_option("--ring", ring, "Z, Q or Z/n");
  coh->add_flag("--monodromy", with_monodromy, "include the monodromy matrix");
  coh->add_flag("--scale", scale, "clear length denominators before computing the monodromy");
  coh->callback([&] {
    run = [&] {
      Graph g = graph_from_json(read_json_file(file));
      const CoeffRing r = CoeffRing::parse(ring);
      Json out = to_json(cohomology(g, r));
      if (with_monodromy) {
        if (scale) {
          const Integer factor = length_denominator_lcm(g);
          g = scale_lengths(g, Rational(factor));
          out["scale"] = factor.str();
        }
        out["monodromy"] = to_json(monodromy_matrix(g, r));
      }
      return out;
    };
  });

  auto* filt = app.add_subcommand("filtration", "graded pieces of the filtration on H^1");
  filt->add_option("file", file, "patron JSON")->required();
  filt->add_option("--theory", theory_text, "etale:<ell>, hk, dr or dagger")->required();
  filt->callback([&] {
    run = [&] {
      return to_json(filtration_report(patron_from_json(read_json_file(file)), Theory::parse(theory_text)));
    };
  });

  auto* mono = app.add_subcommand("monodromy", "monodromy on the associated graded");
  mono->add_option("file", file, "patron JSON")->required();
  mono->add_option("--theory", theory_text, "etale:<ell>, hk, dr or dagger")->required();
  mono->callback([&] {
    run = [&] {
      const RatMatrix m = total_monodromy(patron_from_json(read_json_file(file)), Theory::parse(theory_text));
      return Json{{"theory", theory_text}, {"monodromy", to_json(m)}, {"squares_to_zero", (m * m).isZero()}};
    };
  });

  auto* stab = app.add_subcommand("stabilize", "contract to the stable marked curve");
  stab->add_option("file", file, "marked curve or patron JSON")->required();
  stab->callback([&] { run = [&] { return to_json(stabilize(read_curve(file))); }; });

  auto* gen = app.add_subcommand("genus", "genus of the curve built from a patron");
  gen->add_option("file", file, "patron JSON")->required();
  gen->callback([&] { run = [&] { return Json{{"genus", genus(patron_from_json(read_json_file(file)))}}; }; });

  int exit_status = 0;
  auto* val = app.add_subcommand("validate", "check the patron invariants");
  val->add_option("file", file, "patron JSON")->required();
  val->callback([&] {
    run = [&] {
      const auto violations = validate(patron_from_json(read_json_file(file)));
      if (violations.empty()) return Json{{"ok", true}};
      exit_status = 1;
      return Json{{"error", "InvalidPatron"}, {"violations", violations}};
    };
  });

  std::string graph_op;
  auto* graph = app.add_subcommand("graph", "graph transformations");
  graph->add_option("op", graph_op, "subdivide, separate or interior")
      ->required()
      ->check(CLI::IsMember({"subdivide", "separate", "interior"}));
  graph->add_option("file", file, "graph JSON")->required();
  graph->callback([&] {
    run = [&] {
      const Graph g = graph_from_json(read_json_file(file));
      if (graph_op == "subdivide") return to_json(subdivide(g));
      if (graph_op == "separate") return to_json(separate(g));
      return to_json(interior_subgraph(g));
    };
  });

  auto* dual = app.add_subcommand("dual-graph", "dual graph of a marked curve or of a patron's special fiber");
  dual->add_option("file", file, "marked curve or patron JSON")->required();
  dual->callback([&] { run = [&] { return to_json(dual_graph(read_curve(file))); }; });

  std::string leg_id, split_at;
  auto* refine = app.add_subcommand("refine", "split a leg through a new genus-0 short");
  refine->add_option("file", file, "patron JSON")->required();
  refine->add_option("--leg", leg_id, "leg id")->required();
  refine->add_option("--at", split_at, "length of the first half")->required();
  refine->callback([&] {
    run = [&] {
      return to_json(refine_leg(patron_from_json(read_json_file(file)), leg_id, parse_rational(split_at)));
    };
  });

  SeriesArgs sa;
  auto* series = app.add_subcommand("series", "truncated Laurent series");
  series->require_subcommand(1);

  auto* factor = series->add_subcommand("factor", "u = c T^k u_plus u_minus");
  add_series_options(factor, sa);
  factor->callback([&] {
    run = [&] {
      const LaurentSeries u = read_series(sa);
      Json out = to_json(factorize_unit(u));
      out["newton"] = to_json(newton_data(u));
      return out;
    };
  });

  auto* res = series->add_subcommand("residue", "coefficient of dT/T");
  add_series_options(res, sa);
  res->callback([&] { run = [&] { return Json{{"residue", to_json(residue(read_series(sa)))}}; }; });

  auto* dl = series->add_subcommand("dlog", "du/u against dT/T");
  add_series_options(dl, sa);
  dl->callback([&] {
    run = [&] {
      const LaurentSeries w = dlog(read_series(sa));
      return Json{{"dlog", to_json(w)}, {"residue", to_json(residue(w))}};
    };
  });

  bool as_form = false;
  auto* leg = series->add_subcommand("leg", "restrict a leg element to one of its ends");
  add_series_options(leg, sa);
  leg->add_option("--mu", sa.mu, "leg length")->required();
  leg->add_option("--side", sa.side, "1 or 2")->check(CLI::IsMember({1, 2}));
  leg->add_flag("--form", as_form, "treat the coefficients as a form against dT1/T1");
  leg->callback([&] {
    run = [&] {
      const LaurentSeries f = read_series(sa);
      const Rational mu = parse_rational(sa.mu);
      const LaurentSeries g = as_form ? leg_restrict_form(f, sa.side, mu) : leg_restrict(f, sa.side, mu);
      Json out{{"series", to_json(g)}, {"newton", newton_or_error(g)}};
      if (as_form) out["residue"] = to_json(residue(g));
      return out;
    };
  });

  auto* root = series->add_subcommand("root", "ell-th root by the binomial series");
  add_series_options(root, sa);
  root->add_option("--ell", sa.ell, "exponent prime to p");
  root->callback([&] { run = [&] { return Json{{"root", to_json(prime_to_p_root(read_series(sa), sa.ell))}}; }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    emit(run());
    return exit_status;
  } catch (const Error& e) {
    emit({{"error", e.code()}, {"detail", e.what()}});
    return 1;
  } catch (const InputError& e) {
    emit({{"error", "InputError"}, {"detail", e.what()}});
    return 2;
  }
}
