// bitangents: solve, decompose and draw the 28 bitangents of plane quartics.
//
// Exit codes: 0 success, 1 a verification did not match, 2 math failure,
// 3 usage error. Errors are written to stderr as JSON.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include "bitan/catalog.hpp"
#include "bitan/errors.hpp"
#include "bitan/lattice.hpp"
#include "cli_io.hpp"
#include "svg_plot.hpp"

using namespace bitan;
using namespace bitan::cli;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kMath = 2, kUsage = 3 };

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

void emit(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

std::vector<ProjTransform> gens_of(const CurveType& t) {
  std::vector<ProjTransform> g;
  for (const Eigen::Matrix3cd& m : t.generators) g.emplace_back(m);
  return g;
}

// Names of the computed terms, as matched against the catalog pattern.
std::vector<std::string> term_names(const MatchReport& r) {
  std::vector<std::string> names;
  for (const auto& t : r.computed_terms) names.push_back(t.at("name").get<std::string>());
  return names;
}

struct Decomposition {
  OrbitDecomposition orbits;
  BurnsideElement burnside;
  MatchReport report;
};

Decomposition decompose(const CurveType& t, const FiniteProjGroup& g, const BitangentSet& s) {
  Decomposition d;
  d.orbits = compute_orbits(g, s);
  d.burnside = to_burnside(g, d.orbits);
  d.report = match_expected(g, d.orbits, d.burnside, t.expected);
  d.report.type = t.name;
  return d;
}

json decomposition_json(const Decomposition& d, const std::string& group_name) {
  return {{"schemaVersion", kSchemaVersion},
          {"group", group_name},
          {"decomposition", d.report.computed},
          {"orbits", to_json(d.orbits)},
          {"burnside", to_json(d.burnside)},
          {"match", d.report.to_json()}};
}

int cmd_solve(const RunConfig& cfg) {
  const Source src = resolve_source(cfg);
  const BitangentSet s = solve_all(src.quartic, cfg.solver);
  emit(solve_json(src, s), cfg.out);
  return kOk;
}

int cmd_orbits(const RunConfig& cfg, const std::string& from_json) {
  BitangentSet s{{}, TernaryQuartic(QuarticCoeffs{Complex(1.0)}), {}};
  const CurveType* type = nullptr;
  if (!from_json.empty()) {
    std::ifstream in(from_json);
    if (!in) throw UsageError("cannot read " + from_json);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(std::string("bad JSON: ") + e.what());
    }
    s = bitangents_from_json(doc);
    if (cfg.type) type = &curve_type(*cfg.type);
    else if (doc["source"].contains("type") && doc["source"]["type"].is_string())
      type = &curve_type(doc["source"]["type"].get<std::string>());
  } else {
    const Source src = resolve_source(cfg);
    type = src.type;
    s = solve_all(src.quartic, cfg.solver);
  }
  if (!type) throw UsageError("orbits needs a catalog type for the group (--type)");
  const FiniteProjGroup& g = type_group(type->id);
  for (std::size_t k : g.generators())
    if (act_on_quartic(g.element(k), s.source).distance(s.source) > 1e-8)
      throw NotInvariant(k, s.items.size());
  const Decomposition d = decompose(*type, g, s);
  json j = decomposition_json(d, type->group_name);
  j["type"] = type->name;
  emit(j, cfg.out);
  return kOk;
}

std::optional<std::vector<Complex>> catalog_params(const RunConfig& cfg) {
  if (cfg.params.empty()) return std::nullopt;
  return resolve_source(cfg).params;
}

int cmd_verify(const RunConfig& cfg, bool probe) {
  if (!cfg.type) throw UsageError("verify needs --type");
  const CurveType& t = curve_type(*cfg.type);
  VerifyOptions opt;
  opt.solver = cfg.solver;
  opt.probe_full_group = probe;
  const Verification v = verify_type(t, catalog_params(cfg), opt);
  json j = v.report.to_json();
  j["schemaVersion"] = kSchemaVersion;
  emit(j, cfg.out);
  std::cerr << (v.report.ok() ? "PASS " : "FAIL ") << t.name << " " << v.report.computed << "\n";
  return v.report.ok() ? kOk : kMismatch;
}

int cmd_verify_all(const RunConfig& cfg, bool probe) {
  VerifyOptions opt;
  opt.solver = cfg.solver;
  opt.probe_full_group = probe;
  json reports = json::array();
  bool all = true;
  std::ostringstream lines;
  for (const CurveType& t : curve_types()) {
    try {
      const Verification v = verify_type(t, std::nullopt, opt);
      reports.push_back(v.report.to_json());
      all = all && v.report.ok();
      lines << (v.report.ok() ? "PASS " : "FAIL ") << t.name << " " << v.report.computed;
      if (!v.report.ok()) lines << "  (expected " << v.report.expected << ")";
      lines << "\n";
    } catch (const Error& e) {
      all = false;
      reports.push_back({{"type", t.name}, {"error", e.what()}});
      lines << "FAIL " << t.name << " error: " << e.what() << "\n";
    }
  }
  std::cout << lines.str();
  if (!cfg.out.empty()) emit(json{{"schemaVersion", kSchemaVersion}, {"reports", reports}}, cfg.out);
  return all ? kOk : kMismatch;
}

int cmd_restrict(const RunConfig& cfg, std::size_t order, const std::vector<std::size_t>& gen_idx) {
  const Source src = resolve_source(cfg);
  if (!src.type) throw UsageError("restrict needs --type");
  if ((order == 0) == gen_idx.empty()) throw UsageError("give exactly one of --subgroup-order and --generators");
  const FiniteProjGroup& g = *src.group;
  for (std::size_t i : gen_idx)
    if (i >= g.order()) throw UsageError("generator index " + std::to_string(i) + " out of range");
  const BitangentSet s = solve_all(src.quartic, cfg.solver);

  // one representative per conjugacy class of subgroups
  std::vector<Subgroup> reps;
  if (!gen_idx.empty()) {
    reps.push_back(g.generated_by(gen_idx));
  } else {
    for (const Subgroup& h : g.subgroups_of_order(order)) {
      bool seen = false;
      for (const Subgroup& r : reps) seen = seen || g.subgroups_conjugate(h, r);
      if (!seen) reps.push_back(h);
    }
    if (reps.empty()) throw UsageError("no subgroup of order " + std::to_string(order));
  }

  json out = json::array();
  for (const Subgroup& h : reps) {
    const FiniteProjGroup sub = as_group(g, h);
    const OrbitDecomposition d = compute_orbits(sub, s);
    const BurnsideElement b = to_burnside(sub, d);
    const std::string label = g.iso_label(h).str();
    json matches = json::array();
    std::string shaped = format_burnside(b, label);
    for (const CurveType& t : curve_types()) {
      if (t.order != h.order()) continue;
      const MatchReport r = match_expected(sub, d, b, t.expected);
      if (r.ok()) {
        matches.push_back(t.name);
        shaped = r.computed;
      }
    }
    out.push_back({{"subgroup", h.members},
                   {"order", h.order()},
                   {"label", label},
                   {"decomposition", shaped},
                   {"matchesTypes", matches},
                   {"burnside", to_json(b)}});
  }
  emit(json{{"schemaVersion", kSchemaVersion},
            {"type", src.type->name},
            {"group", src.type->group_name},
            {"source", src.to_json()},
            {"restrictions", out}},
       cfg.out);
  return kOk;
}

int cmd_specialize(const RunConfig& cfg, const std::string& from, const std::string& to) {
  const CurveType& a = curve_type(from);
  const CurveType& b = curve_type(to);
  const auto gens = gens_of(b);
  const SpecializationResult r = specialize(a.family, gens, 1e-9);
  json j = r.to_json();
  j["schemaVersion"] = kSchemaVersion;
  j["from"] = a.name;
  j["to"] = b.name;
  j["result"] = r.feasible() ? "Feasible" : "Infeasible";
  json described = json::array();
  for (const AffineSolution& s : r.solutions) described.push_back(s.describe(a.family.params));
  j["loci"] = described;
  emit(j, cfg.out);
  std::cerr << a.name << " -> " << b.name << ": " << (r.feasible() ? "Feasible" : "Infeasible") << "\n";
  return kOk;
}

int cmd_lattice(const RunConfig& cfg) {
  const auto edges = lattice_report();
  json arr = json::array();
  bool all = true;
  for (const LatticeEdge& e : edges) {
    arr.push_back(e.to_json());
    all = all && e.confirmed();
    std::cerr << (e.confirmed() ? "CONFIRMED   " : "UNCONFIRMED ") << e.from << " -> " << e.to << (e.dashed ? " (dashed) " : " ")
              << e.label << "\n";
  }
  emit(json{{"schemaVersion", kSchemaVersion}, {"edges", arr}, {"allConfirmed", all}}, cfg.out);
  return kOk;
}

int cmd_plot(const RunConfig& cfg) {
  const Source src = resolve_source(cfg);
  const BitangentSet s = solve_all(src.quartic, cfg.solver);
  PlotInput in;
  in.quartic = &src.quartic;
  in.window = cfg.window;
  in.grid = cfg.grid;

  if (!cfg.window_given) {
    // wide enough that every real line crosses the window
    double reach = 2.0;
    for (const Bitangent& b : s.items)
      if (b.is_real) {
        const auto l = real_line(b.line);
        const double d = std::abs(l[2]) / std::max(std::hypot(l[0], l[1]), 1e-12);
        if (d < 100.0) reach = std::max(reach, std::ceil(1.25 * d));
      }
    in.window = {-reach, reach, -reach, reach};
  }

  if (src.type) {
    const Decomposition d = decompose(*src.type, *src.group, s);
    const std::string& group = src.type->group_name;
    in.title = "Type " + src.type->name + ": " + d.report.computed;
    const auto names = term_names(d.report);
    // one colour per orbit with real lines, ordered by stabilizer class
    for (std::size_t k = 0; k < d.burnside.terms.size(); ++k)
      for (const Orbit& o : d.orbits.orbits) {
        if (o.stab_class != d.burnside.terms[k].stab_class || o.real_count == 0) continue;
        const std::size_t colour = in.classes.size();
        in.classes.push_back({"[" + group + "/" + names[k] + "] orbit of " + std::to_string(o.members.size()),
                              o.real_count});
        for (std::size_t m : o.members)
          if (s.items[m].is_real) in.lines.push_back({s.items[m].line, colour});
      }
  } else {
    in.title = "quartic with " + std::to_string(count_real(s)) + " real bitangents";
    if (count_real(s) > 0) in.classes.push_back({"bitangent", count_real(s)});
    for (const Bitangent& b : s.items)
      if (b.is_real) in.lines.push_back({b.line, 0});
  }
  const PlotResult r = render_svg(in);
  emit(r.svg, cfg.out);
  if (!r.curve_drawn) {
    std::cerr << error_json("NoRealPoints", r.contoured ? "the curve has no real points in the window"
                                                        : "complex coefficients: only lines were drawn",
                            json{{"linesDrawn", r.lines_drawn}})
                     .dump()
              << "\n";
    return kMath;
  }
  return kOk;
}

int cmd_catalog(const RunConfig& cfg) {
  json rows = json::array();
  for (const CurveType& t : curve_types()) rows.push_back(catalog_row(t));
  emit(json{{"schemaVersion", kSchemaVersion}, {"types", rows}}, cfg.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bitangents of plane quartics and their symmetry"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string type, config_file, window;
  std::optional<double> tol_accept, tol_match, tol_hyperflex;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  app.add_option("--type", type, "catalog type, I..XII or 1..12");
  app.add_option("--params", cfg.params, "parameter k=v, repeatable; values like -34/25 or 1.5-2i");
  app.add_option("--coeffs", cfg.coeffs, "15 re/im pairs in the order x^4, x^3y, x^3z, x^2y^2, ...")->expected(30);
  app.add_option("--config", config_file, "flat key = value file");
  app.add_option("--tol-accept", tol_accept, "relative residual accepted by the polish");
  app.add_option("--tol-match", tol_match, "projective distance for matching lines");
  app.add_option("--tol-hyperflex", tol_hyperflex, "tangency point separation for hyperflexes");
  app.add_option("--seed", seed, "root finder seed");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--window", window, "xmin,xmax,ymin,ymax of the chart z = 1");
  app.add_option("--grid", grid, "contouring grid size");

  auto* solve = app.add_subcommand("solve", "the 28 bitangents as JSON");
  std::string from_json;
  auto* orbits = app.add_subcommand("orbits", "orbits and Burnside decomposition");
  orbits->add_option("--from-json", from_json, "output of solve");
  bool probe = false;
  auto* verify = app.add_subcommand("verify", "check one type against its expected decomposition");
  verify->add_flag("--probe", probe, "also count automorphisms outside the catalog group");
  auto* verify_all = app.add_subcommand("verify-all", "check all twelve types at their default parameters");
  verify_all->add_flag("--probe", probe, "also count automorphisms outside the catalog group");
  std::size_t sub_order = 0;
  std::vector<std::size_t> gen_idx;
  auto* restrict = app.add_subcommand("restrict", "restrict the action to a subgroup");
  restrict->add_option("--subgroup-order", sub_order, "scan subgroups of this order, one per conjugacy class");
  restrict->add_option("--generators", gen_idx, "element indices generating the subgroup")->delimiter(',');
  std::string from, to;
  auto* spec = app.add_subcommand("specialize", "parameters where one family has another type's symmetry");
  spec->add_option("--from", from, "family")->required();
  spec->add_option("--to", to, "type whose generators are imposed")->required();
  auto* lattice = app.add_subcommand("lattice", "check the edges between types");
  auto* plot = app.add_subcommand("plot", "SVG of the real curve and its real bitangents");
  auto* catalog = app.add_subcommand("catalog", "catalog export");
  catalog->add_subcommand("list", "one JSON row per type")->require_subcommand(0);
  catalog->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (!config_file.empty()) load_config_file(config_file, cfg);
    if (tol_accept) cfg.solver.accept_tol = *tol_accept;
    if (tol_match) cfg.solver.match_tol = *tol_match;
    if (tol_hyperflex) cfg.solver.hyperflex_tol = *tol_hyperflex;
    if (seed) cfg.solver.seed = *seed;
    if (grid) cfg.grid = *grid;
    if (!window.empty()) {
      cfg.window = parse_window(window);
      cfg.window_given = true;
    }
    if (!type.empty()) cfg.type = type;
    validate(cfg);

    if (*solve) return cmd_solve(cfg);
    if (*orbits) return cmd_orbits(cfg, from_json);
    if (*verify) return cmd_verify(cfg, probe);
    if (*verify_all) return cmd_verify_all(cfg, probe);
    if (*restrict) return cmd_restrict(cfg, sub_order, gen_idx);
    if (*spec) return cmd_specialize(cfg, from, to);
    if (*lattice) return cmd_lattice(cfg);
    if (*plot) return cmd_plot(cfg);
    if (*catalog) return cmd_catalog(cfg);
  } catch (const UsageError& e) {
    std::cerr << error_json("UsageError", e.what()).dump() << "\n";
    return kUsage;
  } catch (const ArityMismatch& e) {
    std::cerr << error_json("ArityMismatch", e.what()).dump() << "\n";
    return kUsage;
  } catch (const ExcludedParameter& e) {
    std::cerr << error_json("ExcludedParameter", e.what(), json{{"promoted", e.promoted()}, {"rule", e.rule()}}).dump()
              << "\n";
    return kUsage;
  } catch (const WrongCount& e) {
    json diag;
    try {
      diag = json::parse(e.diagnostics());
    } catch (const json::exception&) {
      diag = e.diagnostics();
    }
    std::cerr << error_json("WrongCount", e.what(), diag).dump() << "\n";
    return kMath;
  } catch (const Error& e) {
    std::cerr << error_json("MathError", e.what()).dump() << "\n";
    return kMath;
  } catch (const std::exception& e) {
    std::cerr << error_json("Error", e.what()).dump() << "\n";
    return kMath;
  }
  return kUsage;
}
