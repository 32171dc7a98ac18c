#include "bitan/equivariant.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <random>

#include "bitan/errors.hpp"

namespace bitan {

std::size_t BurnsideElement::total() const {
  std::size_t n = 0;
  for (const auto& t : terms) n += t.multiplicity * t.orbit_size;
  return n;
}

std::size_t ExpectedPattern::total() const {
  std::size_t n = 0;
  for (const auto& t : terms) n += t.multiplicity * (group_order / t.stab_order);
  return n;
}

namespace {

std::string term_string(std::size_t mult, const std::string& group, const std::string& sub) {
  return (mult == 1 ? std::string() : std::to_string(mult)) + "[" + group + "/" + sub + "]";
}

std::string default_name(const IsoLabel& l) { return l.order == 1 ? "e" : l.str(); }

nlohmann::json term_json(const BurnsideTerm& t, const std::string& name) {
  return {{"name", name},
          {"multiplicity", t.multiplicity},
          {"orbitSize", t.orbit_size},
          {"stabilizerOrder", t.stab_order},
          {"label", t.label.str()},
          {"central", t.central},
          {"generatorClassSize", t.generator_class_size},
          {"realCount", t.real_count}};
}

}  // namespace

std::string ExpectedPattern::str() const {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    out += term_string(t.multiplicity, group_name, t.name);
  }
  return out;
}

OrbitDecomposition compute_orbits(const FiniteProjGroup& g, const BitangentSet& s) {
  const std::size_t n = s.items.size();
  const double tol = g.match_tol();

  // Permutation of the lines induced by each generator.
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t k : g.generators()) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = s.find(act_on_line(g.element(k), s.items[i].line), tol);
      if (p[i] >= n) throw NotInvariant(k, i);
    }
    perms.push_back(std::move(p));
  }

  OrbitDecomposition d;
  d.group_order = g.order();
  std::vector<char> seen(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    Orbit o;
    o.members.push_back(start);
    seen[start] = 1;
    for (std::size_t head = 0; head < o.members.size(); ++head)
      for (const auto& p : perms) {
        const std::size_t next = p[o.members[head]];
        if (!seen[next]) {
          seen[next] = 1;
          o.members.push_back(next);
        }
      }
    std::sort(o.members.begin(), o.members.end());
    o.representative = o.members.front();
    o.stabilizer = stabilizer(g, s.items[o.representative].line);
    o.label = g.iso_label(o.stabilizer);
    o.central = g.is_central(o.stabilizer);
    for (std::size_t m : o.members)
      if (s.items[m].is_real) ++o.real_count;

    o.stab_class = d.stabilizer_classes.size();
    for (std::size_t c = 0; c < d.stabilizer_classes.size(); ++c)
      if (g.subgroups_conjugate(d.stabilizer_classes[c], o.stabilizer)) {
        o.stab_class = c;
        break;
      }
    if (o.stab_class == d.stabilizer_classes.size()) d.stabilizer_classes.push_back(o.stabilizer);
    d.orbits.push_back(std::move(o));
  }
  return d;
}

BurnsideElement to_burnside(const FiniteProjGroup& g, const OrbitDecomposition& d) {
  BurnsideElement b;
  b.group_order = d.group_order;
  for (std::size_t c = 0; c < d.stabilizer_classes.size(); ++c) {
    BurnsideTerm t;
    t.stab_class = c;
    for (const Orbit& o : d.orbits) {
      if (o.stab_class != c) continue;
      if (t.multiplicity == 0) {
        t.orbit_size = o.members.size();
        t.stab_order = o.stabilizer.order();
        t.label = o.label;
        t.central = o.central;
      }
      ++t.multiplicity;
      t.real_count += o.real_count;
    }
    const Subgroup& h = d.stabilizer_classes[c];
    if (t.label.kind == IsoLabel::Kind::cyclic && h.order() > 1)
      for (std::size_t m : h.members)
        if (g.element_order(m) == h.order()) {
          t.generator_class_size = g.class_size_of(m);
          break;
        }
    b.terms.push_back(t);
  }
  std::stable_sort(b.terms.begin(), b.terms.end(),
                   [](const BurnsideTerm& x, const BurnsideTerm& y) { return x.stab_order < y.stab_order; });
  return b;
}

std::string format_burnside(const BurnsideElement& b, const std::string& group_name,
                            const std::vector<std::string>& names) {
  std::vector<std::size_t> order(b.terms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return b.terms[x].stab_order < b.terms[y].stab_order; });
  std::string out;
  for (std::size_t i : order) {
    const BurnsideTerm& t = b.terms[i];
    if (!out.empty()) out += " + ";
    out += term_string(t.multiplicity, group_name, i < names.size() ? names[i] : default_name(t.label));
  }
  return out;
}

FiniteProjGroup as_group(const FiniteProjGroup& g, const Subgroup& h) {
  std::vector<ProjTransform> gens;
  for (std::size_t m : h.members)
    if (m != 0) gens.push_back(g.element(m));
  return FiniteProjGroup::closure(gens, std::max<std::size_t>(h.order(), 1), g.match_tol());
}

BurnsideElement restrict_action(const FiniteProjGroup& g, const Subgroup& h, const BitangentSet& s) {
  const FiniteProjGroup sub = as_group(g, h);
  return to_burnside(sub, compute_orbits(sub, s));
}

namespace {

bool compatible(const BurnsideTerm& c, const ExpectedTerm& e, std::size_t group_order) {
  if (c.stab_order != e.stab_order || c.orbit_size * e.stab_order != group_order) return false;
  if (c.multiplicity != e.multiplicity || !(c.label == e.label)) return false;
  if (e.central && *e.central != c.central) return false;
  if (e.generator_class_size && *e.generator_class_size != c.generator_class_size) return false;
  return true;
}

bool assign(const BurnsideElement& b, const ExpectedPattern& p, std::size_t i, std::vector<std::size_t>& out,
            std::vector<char>& used) {
  if (i == b.terms.size()) return true;
  for (std::size_t j = 0; j < p.terms.size(); ++j) {
    if (used[j] || !compatible(b.terms[i], p.terms[j], p.group_order)) continue;
    used[j] = 1;
    out[i] = j;
    if (assign(b, p, i + 1, out, used)) return true;
    used[j] = 0;
  }
  return false;
}

bool same_signature(const BurnsideTerm& x, const BurnsideTerm& y) {
  return x.orbit_size == y.orbit_size && x.stab_order == y.stab_order && x.label == y.label &&
         x.central == y.central && x.generator_class_size == y.generator_class_size && x.multiplicity == y.multiplicity;
}

}  // namespace

MatchReport match_expected(const FiniteProjGroup& g, const OrbitDecomposition& d, const BurnsideElement& b,
                           const ExpectedPattern& p) {
  MatchReport r;
  r.group_order = g.order();
  r.expected = p.str();
  for (const auto& t : p.terms) {
    nlohmann::json j{{"name", t.name},
                     {"multiplicity", t.multiplicity},
                     {"orbitSize", p.group_order / t.stab_order},
                     {"stabilizerOrder", t.stab_order},
                     {"label", t.label.str()}};
    if (t.central) j["central"] = *t.central;
    if (t.generator_class_size) j["generatorClassSize"] = *t.generator_class_size;
    r.expected_terms.push_back(j);
  }

  if (p.group_order != g.order())
    r.mismatches.push_back("group order " + std::to_string(g.order()) + ", expected " + std::to_string(p.group_order));
  if (b.total() != 28) r.mismatches.push_back("orbit sizes sum to " + std::to_string(b.total()));
  for (const Orbit& o : d.orbits)
    if (o.members.size() * o.stabilizer.order() != g.order())
      r.mismatches.push_back("orbit of line " + std::to_string(o.representative) + " violates orbit-stabilizer");

  // Conjugacy grouping on the actual stabilizers: equal classes within a
  // term, pairwise non-conjugate representatives across terms.
  for (const Orbit& o : d.orbits)
    if (!g.subgroups_conjugate(o.stabilizer, d.stabilizer_classes[o.stab_class]))
      r.mismatches.push_back("orbit of line " + std::to_string(o.representative) + " assigned to a non-conjugate class");
  for (std::size_t a = 0; a < d.stabilizer_classes.size(); ++a)
    for (std::size_t c = a + 1; c < d.stabilizer_classes.size(); ++c)
      if (g.subgroups_conjugate(d.stabilizer_classes[a], d.stabilizer_classes[c]))
        r.mismatches.push_back("stabilizer classes " + std::to_string(a) + " and " + std::to_string(c) +
                               " are conjugate");

  r.assignment.assign(b.terms.size(), static_cast<std::size_t>(-1));
  std::vector<char> used(p.terms.size(), 0);
  std::vector<std::size_t> out(b.terms.size(), static_cast<std::size_t>(-1));
  const bool bijective = b.terms.size() == p.terms.size() && assign(b, p, 0, out, used);
  std::vector<std::string> names(b.terms.size());
  if (bijective) {
    r.assignment = out;
    for (std::size_t i = 0; i < b.terms.size(); ++i) names[i] = p.terms[out[i]].name;
  } else {
    r.mismatches.push_back("computed terms do not match the expected pattern one to one");
    for (const auto& e : p.terms)
      if (std::none_of(b.terms.begin(), b.terms.end(), [&](const BurnsideTerm& c) { return compatible(c, e, p.group_order); }))
        r.mismatches.push_back("expected " + term_string(e.multiplicity, p.group_name, e.name) + " (stabilizer " +
                               e.label.str() + ") has no computed counterpart");
    for (const auto& c : b.terms)
      if (std::none_of(p.terms.begin(), p.terms.end(), [&](const ExpectedTerm& e) { return compatible(c, e, p.group_order); }))
        r.mismatches.push_back("computed " + term_string(c.multiplicity, p.group_name, default_name(c.label)) +
                               " (orbit size " + std::to_string(c.orbit_size) + (c.central ? ", central" : "") +
                               ") is not in the pattern");
    for (std::size_t i = 0; i < b.terms.size(); ++i) names[i] = default_name(b.terms[i].label);
  }

  // Computed string in pattern order when matched.
  if (bijective) {
    std::vector<std::size_t> by_pattern(p.terms.size());
    for (std::size_t i = 0; i < out.size(); ++i) by_pattern[out[i]] = i;
    std::string s;
    for (std::size_t j : by_pattern) {
      if (!s.empty()) s += " + ";
      s += term_string(b.terms[j].multiplicity, p.group_name, names[j]);
    }
    r.computed = s;
  } else {
    r.computed = format_burnside(b, p.group_name, names);
  }
  for (std::size_t i = 0; i < b.terms.size(); ++i) r.computed_terms.push_back(term_json(b.terms[i], names[i]));
  return r;
}

bool burnside_equivalent(const BurnsideElement& a, const BurnsideElement& b) {
  if (a.group_order != b.group_order || a.terms.size() != b.terms.size()) return false;
  std::vector<char> used(b.terms.size(), 0);
  for (const auto& t : a.terms) {
    bool found = false;
    for (std::size_t j = 0; j < b.terms.size() && !found; ++j)
      if (!used[j] && same_signature(t, b.terms[j])) used[j] = 1, found = true;
    if (!found) return false;
  }
  return true;
}

nlohmann::json MatchReport::to_json() const {
  nlohmann::json j{{"type", type},
                   {"groupOrder", group_order},
                   {"computed", computed_terms},
                   {"expected", expected_terms},
                   {"computedString", computed},
                   {"expectedString", expected},
                   {"mismatches", mismatches},
                   {"match", ok()}};
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

nlohmann::json to_json(const OrbitDecomposition& d) {
  nlohmann::json orbits = nlohmann::json::array();
  for (const Orbit& o : d.orbits)
    orbits.push_back({{"members", o.members},
                      {"representative", o.representative},
                      {"stabilizer", o.stabilizer.members},
                      {"stabilizerOrder", o.stabilizer.order()},
                      {"label", o.label.str()},
                      {"stabClass", o.stab_class},
                      {"central", o.central},
                      {"realCount", o.real_count}});
  return {{"groupOrder", d.group_order}, {"orbits", orbits}};
}

nlohmann::json to_json(const BurnsideElement& b) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : b.terms) terms.push_back(term_json(t, default_name(t.label)));
  return {{"groupOrder", b.group_order}, {"terms", terms}};
}

std::vector<ProjTransform> find_automorphisms(const BitangentSet& s, double tol) {
  const std::size_t n = s.items.size();
  std::vector<Eigen::Vector3cd> l(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& c = s.items[i].line.coords();
    l[i] = Eigen::Vector3cd(c[0], c[1], c[2]).normalized();
  }
  auto det3 = [&](std::size_t a, std::size_t b, std::size_t c) {
    Eigen::Matrix3cd m;
    m << l[a], l[b], l[c];
    return std::abs(m.determinant());
  };

  // Frame: the first quadruple whose triples are all well conditioned.
  std::array<std::size_t, 4> fr{};
  double best = 0.0;
  for (std::size_t a = 0; a < n && best < 0.05; ++a)
    for (std::size_t b = a + 1; b < n && best < 0.05; ++b)
      for (std::size_t c = b + 1; c < n && best < 0.05; ++c)
        for (std::size_t e = c + 1; e < n && best < 0.05; ++e) {
          const double q = std::min({det3(a, b, c), det3(a, b, e), det3(a, c, e), det3(b, c, e)});
          if (q > best) {
            best = q;
            fr = {a, b, c, e};
          }
        }
  if (best < 1e-6) return {};

  // Column map D with D l_frame[i] proportional to l_image[i]; the induced
  // transformation g satisfies g^-T = D.
  Eigen::Matrix3cd a;
  for (int i = 0; i < 3; ++i) a.col(i) = l[fr[static_cast<std::size_t>(i)]];
  const Eigen::Vector3cd ca = a.fullPivLu().solve(l[fr[3]]);
  const Eigen::Matrix3cd src_inv = (a * ca.asDiagonal()).inverse();

  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::array<Eigen::Vector3cd, 4> pts;
  std::array<Complex, 4> fp;
  const TernaryQuartic& f = s.source;
  for (std::size_t i = 0; i < 4; ++i) {
    for (int r = 0; r < 3; ++r) pts[i](r) = Complex(nd(rng), nd(rng));
    fp[i] = f({pts[i](0), pts[i](1), pts[i](2)});
  }

  std::vector<ProjTransform> found;
  for (std::size_t i0 = 0; i0 < n; ++i0)
    for (std::size_t i1 = 0; i1 < n; ++i1) {
      if (i1 == i0) continue;
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        if (i2 == i0 || i2 == i1) continue;
        Eigen::Matrix3cd b;
        b << l[i0], l[i1], l[i2];
        if (std::abs(b.determinant()) < 1e-10) continue;
        const Eigen::Matrix3cd b_inv = b.inverse();
        for (std::size_t i3 = 0; i3 < n; ++i3) {
          if (i3 == i0 || i3 == i1 || i3 == i2) continue;
          const Eigen::Vector3cd cb = b_inv * l[i3];
          const double cmax = cb.cwiseAbs().maxCoeff(), cmin = cb.cwiseAbs().minCoeff();
          if (!(cmin > 1e-6 * cmax)) continue;
          const Eigen::Matrix3cd dt = (b * cb.asDiagonal() * src_inv).transpose();  // g^-1
          Complex ratio{};
          bool ok = true;
          for (std::size_t k = 0; k < 4 && ok; ++k) {
            const Eigen::Vector3cd q = dt * pts[k];
            const Complex r = f({q(0), q(1), q(2)}) / fp[k];
            if (k == 0) {
              ratio = r;
              ok = std::abs(r) > 0.0;
            } else {
              ok = std::abs(r - ratio) <= tol * std::abs(ratio);
            }
          }
          if (!ok) continue;
          const ProjTransform g(Eigen::Matrix3cd(dt.inverse()));
          if (std::none_of(found.begin(), found.end(), [&](const ProjTransform& x) { return x.distance(g) < 1e-6; }))
            found.push_back(g);
        }
      }
    }
  return found;
}

}  // namespace bitan
