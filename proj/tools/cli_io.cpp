#include "cli_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bitan/errors.hpp"

namespace bitan::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw UsageError("empty number");
  if (const auto slash = t.find('/'); slash != std::string::npos) {
    const double den = parse_real(t.substr(slash + 1));
    if (den == 0.0) throw UsageError("zero denominator in '" + s + "'");
    return parse_real(t.substr(0, slash)) / den;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != t.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& key, const std::string& value) {
  const double v = parse_real(value);
  if (v < 0 || v != std::floor(v)) throw UsageError(key + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw UsageError("empty number");
  if (s.back() != 'i') return parse_real(s);
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size() - 1; k > 0; --k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = s.substr(split == std::string::npos ? 0 : split, s.size() - 1 - (split == std::string::npos ? 0 : split));
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::array<double, 4> parse_window(const std::string& s) {
  std::array<double, 4> w{};
  std::stringstream in(s);
  std::string part;
  std::size_t k = 0;
  while (std::getline(in, part, ',')) {
    if (k == 4) throw UsageError("window takes four numbers: xmin,xmax,ymin,ymax");
    w[k++] = parse_real(part);
  }
  if (k != 4) throw UsageError("window takes four numbers: xmin,xmax,ymin,ymax");
  return w;
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "accept_tol") cfg.solver.accept_tol = parse_real(value);
    else if (key == "match_tol") cfg.solver.match_tol = parse_real(value);
    else if (key == "hyperflex_tol") cfg.solver.hyperflex_tol = parse_real(value);
    else if (key == "max_iter") cfg.solver.max_iter = static_cast<int>(to_size(key, value));
    else if (key == "seed") cfg.solver.seed = to_size(key, value);
    else if (key == "grid") cfg.grid = static_cast<int>(to_size(key, value));
    else if (key == "window") {
      cfg.window = parse_window(value);
      cfg.window_given = true;
    } else throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

void validate(const RunConfig& cfg) {
  const SolverConfig& s = cfg.solver;
  for (double t : {s.accept_tol, s.match_tol, s.hyperflex_tol})
    if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("tolerances must be positive");
  if (s.max_iter <= 0) throw UsageError("max_iter must be positive");
  if (cfg.grid < 2 || cfg.grid > 8192) throw UsageError("grid must be between 2 and 8192");
  const auto& w = cfg.window;
  for (double v : w)
    if (!std::isfinite(v)) throw UsageError("window must be finite");
  if (!(w[0] < w[1]) || !(w[2] < w[3])) throw UsageError("window needs xmin < xmax and ymin < ymax");
}

Source from_instance(const Instance& inst) {
  Source s;
  s.type = inst.type;
  s.params = inst.params;
  s.literal = inst.literal;
  s.quartic = inst.quartic;
  s.group = inst.group;
  s.warnings = inst.warnings;
  return s;
}

Source resolve_source(const RunConfig& cfg) {
  if (cfg.type && !cfg.coeffs.empty()) throw UsageError("give either --type or --coeffs, not both");
  if (!cfg.coeffs.empty()) {
    if (!cfg.params.empty()) throw UsageError("--params needs --type");
    if (cfg.coeffs.size() != 30) throw UsageError("--coeffs takes 30 numbers (15 re/im pairs)");
    QuarticCoeffs c{};
    for (std::size_t i = 0; i < 15; ++i) c[i] = Complex(cfg.coeffs[2 * i], cfg.coeffs[2 * i + 1]);
    Source s;
    try {
      s.quartic = TernaryQuartic(c);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return s;
  }
  if (!cfg.type) throw UsageError("give --type or --coeffs");
  const CurveType& t = curve_type(*cfg.type);
  if (cfg.params.empty()) return from_instance(instantiate_default(t));

  std::vector<std::optional<Complex>> vals(t.param_names.size());
  for (const std::string& kv : cfg.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--params expects k=v, got '" + kv + "'");
    const std::string key = trim(kv.substr(0, eq));
    const auto it = std::find(t.param_names.begin(), t.param_names.end(), key);
    if (it == t.param_names.end())
      throw ArityMismatch("type " + t.name + " has no parameter '" + key + "'");
    vals[static_cast<std::size_t>(it - t.param_names.begin())] = parse_complex(kv.substr(eq + 1));
  }
  std::vector<Complex> p;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i]) throw ArityMismatch("missing parameter '" + t.param_names[i] + "' for type " + t.name);
    p.push_back(*vals[i]);
  }
  return from_instance(instantiate(t, p));
}

nlohmann::json Source::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  if (type) {
    j["type"] = type->name;
    j["literal"] = literal;
    nlohmann::json p = nlohmann::json::object();
    for (std::size_t i = 0; i < params.size(); ++i) p[type->param_names[i]] = complex_json(params[i]);
    j["params"] = p;
  } else {
    j["type"] = nullptr;
  }
  j["warnings"] = warnings;
  return j;
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw UsageError("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json vec_json(const Vec3& v) {
  return nlohmann::json::array({complex_json(v[0]), complex_json(v[1]), complex_json(v[2])});
}

Vec3 vec_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw UsageError("expected three [re, im] pairs");
  return {complex_from_json(j[0]), complex_from_json(j[1]), complex_from_json(j[2])};
}

nlohmann::json quartic_json(const TernaryQuartic& f) {
  nlohmann::json mons = nlohmann::json::array(), cs = nlohmann::json::array();
  for (std::size_t i = 0; i < 15; ++i) {
    const Monomial& m = quartic_monomials()[i];
    mons.push_back({m.x, m.y, m.z});
    cs.push_back(complex_json(f.coeffs()[i]));
  }
  return {{"monomials", mons}, {"coefficients", cs}};
}

TernaryQuartic quartic_from_json(const nlohmann::json& j) {
  if (!j.contains("coefficients") || !j["coefficients"].is_array() || j["coefficients"].size() != 15)
    throw UsageError("quartic needs 15 coefficients");
  QuarticCoeffs c{};
  if (j.contains("monomials")) {
    for (std::size_t i = 0; i < 15; ++i) {
      const auto& m = j["monomials"].at(i);
      c[quartic_monomial_index(m.at(0).get<int>(), m.at(1).get<int>(), m.at(2).get<int>())] =
          complex_from_json(j["coefficients"][i]);
    }
  } else {
    for (std::size_t i = 0; i < 15; ++i) c[i] = complex_from_json(j["coefficients"][i]);
  }
  return TernaryQuartic(c);
}

nlohmann::json solve_json(const Source& src, const BitangentSet& s) {
  nlohmann::json lines = nlohmann::json::array();
  for (const Bitangent& b : s.items) {
    lines.push_back({{"line", vec_json(b.line.coords())},
                     {"real", b.is_real},
                     {"hyperflex", b.is_hyperflex},
                     {"residual", b.residual},
                     {"tangencyPoints",
                      nlohmann::json::array({vec_json(b.tangency_points[0].coords()),
                                             vec_json(b.tangency_points[1].coords())})}});
  }
  return {{"schemaVersion", kSchemaVersion},
          {"source", src.to_json()},
          {"quartic", quartic_json(s.source)},
          {"realCount", count_real(s)},
          {"bitangents", lines},
          {"diagnostics", nlohmann::json::parse(s.diagnostics.to_json())}};
}

BitangentSet bitangents_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("schemaVersion", 0) != kSchemaVersion)
    throw UsageError("expected a solve document with schemaVersion 1");
  if (!doc.contains("quartic") || !doc.contains("bitangents") || !doc["bitangents"].is_array())
    throw UsageError("solve document needs quartic and bitangents");
  BitangentSet s{{}, quartic_from_json(doc["quartic"]), {}};
  for (const auto& b : doc["bitangents"]) {
    const auto& tp = b.at("tangencyPoints");
    s.items.push_back(Bitangent{ProjLine(vec_from_json(b.at("line"))),
                                UniPoly{},
                                0,
                                {ProjPoint(vec_from_json(tp.at(0))), ProjPoint(vec_from_json(tp.at(1)))},
                                b.value("residual", 0.0),
                                b.value("real", false),
                                b.value("hyperflex", false)});
  }
  return s;
}

nlohmann::json error_json(const std::string& kind, const std::string& message, const nlohmann::json& detail) {
  nlohmann::json e{{"kind", kind}, {"message", message}};
  if (!detail.is_null()) e["detail"] = detail;
  return {{"schemaVersion", kSchemaVersion}, {"error", e}};
}

}  // namespace bitan::cli
