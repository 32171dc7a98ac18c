#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "bitan/catalog.hpp"
#include "bitan/equivariant.hpp"
#include "bitan/errors.hpp"
#include "test_util.hpp"

using namespace bitan;

namespace {

QuarticCoeffs from_terms(std::initializer_list<std::pair<std::array<int, 3>, Complex>> terms) {
  QuarticCoeffs c{};
  for (const auto& [e, v] : terms) c[quartic_monomial_index(e[0], e[1], e[2])] += v;
  return c;
}

const Verification& verified(int id) {
  static std::map<int, Verification> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, verify_type(curve_type(id))).first;
  return it->second;
}

ExpectedTerm cyc(std::size_t mult, std::size_t order) {
  ExpectedTerm t;
  t.name = order == 1 ? "e" : "C" + std::to_string(order);
  t.multiplicity = mult;
  t.stab_order = order;
  t.label = IsoLabel{IsoLabel::Kind::cyclic, order, true};
  return t;
}

}  // namespace

TEST_CASE("Klein quartic: a single orbit of 28 with stabilizer S3") {
  const Verification& v = verified(1);
  REQUIRE(v.orbits.orbits.size() == 1);
  const Orbit& o = v.orbits.orbits.front();
  CHECK(o.members.size() == 28);
  CHECK(o.stabilizer.order() == 6);
  CHECK(o.label.str() == "S3");
  CHECK(format_burnside(v.burnside, "PSL2(7)") == "[PSL2(7)/S3]");
}

TEST_CASE("trivial group: 28 fixed points") {
  std::mt19937_64 rng(11);
  const BitangentSet s = solve_all(TernaryQuartic(testutil::random_quartic(rng)));
  const FiniteProjGroup e = FiniteProjGroup::closure(std::span<const ProjTransform>{});
  const OrbitDecomposition d = compute_orbits(e, s);
  CHECK(d.orbits.size() == 28);
  const BurnsideElement b = to_burnside(e, d);
  REQUIRE(b.terms.size() == 1);
  CHECK(b.terms[0].multiplicity == 28);
  CHECK(format_burnside(b, "e") == "28[e/e]");
}

TEST_CASE("decomposition strings") {
  CHECK(format_burnside(verified(6).burnside, "C9") == "3[C9/e] + [C9/C9]");
  CHECK(format_burnside(verified(8).burnside, "C6") == "4[C6/e] + [C6/C2] + [C6/C6]");
  CHECK(verified(6).report.computed == "3[C9/e] + [C9/C9]");
  CHECK(verified(8).report.computed == "4[C6/e] + [C6/C2] + [C6/C6]");
  CHECK(verified(4).report.computed == "[S4/C2^o] + [S4/C2^e] + [S4/S3]");
}

TEST_CASE("orbit-stabilizer and the count 28 for every default example") {
  for (int id = 1; id <= 12; ++id) {
    CAPTURE(id);
    const Verification& v = verified(id);
    const std::size_t n = v.instance.group->order();
    std::size_t sum = 0;
    std::set<std::size_t> seen;
    for (const Orbit& o : v.orbits.orbits) {
      CHECK(o.members.size() * o.stabilizer.order() == n);
      CHECK(std::find(o.members.begin(), o.members.end(), o.representative) != o.members.end());
      for (std::size_t m : o.members) CHECK(seen.insert(m).second);
      sum += o.members.size();
    }
    CHECK(sum == 28);
    CHECK(v.burnside.total() == 28);
    std::size_t real = 0;
    for (const Orbit& o : v.orbits.orbits) real += o.real_count;
    CHECK(real == count_real(v.bitangents));
  }
}

TEST_CASE("Burnside terms are sorted by stabilizer order") {
  for (int id = 1; id <= 12; ++id) {
    const auto& terms = verified(id).burnside.terms;
    for (std::size_t i = 1; i < terms.size(); ++i) CHECK(terms[i - 1].stab_order <= terms[i].stab_order);
  }
}

TEST_CASE("Edge quartic restricted to the Sylow 2-subgroups") {
  const CurveType& iv = curve_type(4);
  const std::array<Complex, 1> a{Complex(-34.0 / 25.0)};
  const Instance inst = instantiate(iv, a);
  const BitangentSet s = solve_all(inst.quartic);
  const FiniteProjGroup& g = *inst.group;
  const auto d8s = g.subgroups_of_order(8);
  REQUIRE(d8s.size() == 3);
  const BurnsideElement first = restrict_action(g, d8s[0], s);
  for (const Subgroup& h : d8s) {
    CHECK(g.iso_label(h).str() == "D8");
    // conjugate subgroups give the same restricted decomposition
    CHECK(burnside_equivalent(restrict_action(g, h, s), first));
  }
  // and it is the generic pattern of the D8 family
  CHECK(burnside_equivalent(first, verified(7).burnside));
  std::multiset<std::size_t> mults;
  for (const BurnsideTerm& t : first.terms) mults.insert(t.multiplicity);
  CHECK(mults == std::multiset<std::size_t>{1, 1, 2, 2});
}

TEST_CASE("restriction to S3 splits the four-line orbit as 1 + 3") {
  const Verification& v = verified(4);
  const FiniteProjGroup& g = *v.instance.group;
  const auto s3s = g.subgroups_of_order(6);
  REQUIRE(s3s.size() == 4);
  for (const Subgroup& h : s3s) {
    const BurnsideElement r = restrict_action(g, h, v.bitangents);
    CHECK(r.group_order == 6);
    CHECK(r.total() == 28);
    std::size_t fixed = 0, threes = 0;
    for (const BurnsideTerm& t : r.terms) {
      if (t.orbit_size == 1) fixed += t.multiplicity;
      if (t.orbit_size == 3) threes += t.multiplicity;
    }
    CHECK(fixed == 1);
    CHECK(threes >= 1);
  }
}

TEST_CASE("restriction to the whole group and to the identity") {
  const Verification& v = verified(5);
  const FiniteProjGroup& g = *v.instance.group;
  CHECK(burnside_equivalent(restrict_action(g, g.whole(), v.bitangents), v.burnside));
  const BurnsideElement e = restrict_action(g, g.trivial(), v.bitangents);
  REQUIRE(e.terms.size() == 1);
  CHECK(e.terms[0].multiplicity == 28);
  const FiniteProjGroup sub = as_group(g, g.center());
  CHECK(sub.order() == 4);
  CHECK(sub.is_abelian());
}

TEST_CASE("central and generator-class flags") {
  const auto& pv = verified(5).burnside.terms;
  REQUIRE(pv.size() == 4);
  std::size_t central = 0;
  for (const BurnsideTerm& t : pv) central += t.central && t.stab_order == 4;
  CHECK(central == 1);

  std::multiset<std::size_t> classes;
  for (const BurnsideTerm& t : verified(4).burnside.terms)
    if (t.stab_order == 2) classes.insert(t.generator_class_size);
  CHECK(classes == std::multiset<std::size_t>{3, 6});
}

TEST_CASE("wrong patterns are rejected") {
  const Verification& v = verified(6);
  const FiniteProjGroup& g = *v.instance.group;
  ExpectedPattern p = curve_type(6).expected;
  CHECK(match_expected(g, v.orbits, v.burnside, p).ok());

  ExpectedPattern more = p;
  more.terms[0].multiplicity = 4;
  CHECK(!match_expected(g, v.orbits, v.burnside, more).ok());

  ExpectedPattern order = p;
  order.group_order = 18;
  CHECK(!match_expected(g, v.orbits, v.burnside, order).ok());

  ExpectedPattern label = p;
  label.terms[1].label = IsoLabel{IsoLabel::Kind::other, 9, true};
  CHECK(!match_expected(g, v.orbits, v.burnside, label).ok());

  ExpectedPattern swapped = p;
  std::swap(swapped.terms[0], swapped.terms[1]);
  CHECK(match_expected(g, v.orbits, v.burnside, swapped).ok());

  // S4 pattern with both involution terms demanding the odd class
  const Verification& w = verified(4);
  ExpectedPattern odd = curve_type(4).expected;
  for (ExpectedTerm& t : odd.terms)
    if (t.stab_order == 2) t.generator_class_size = 6;
  CHECK(!match_expected(*w.instance.group, w.orbits, w.burnside, odd).ok());
}

TEST_CASE("a group that does not preserve the curve") {
  std::mt19937_64 rng(5);
  const BitangentSet s = solve_all(TernaryQuartic(testutil::random_quartic(rng)));
  CHECK_THROWS_AS(compute_orbits(type_group(4), s), NotInvariant);
}

TEST_CASE("complex conjugation permutes orbits when the group is real") {
  for (int id : {4, 5, 7, 10, 12}) {
    CAPTURE(id);
    const Verification& v = verified(id);
    REQUIRE(v.instance.quartic.has_real_coefficients());
    std::vector<std::size_t> conj(28);
    for (std::size_t i = 0; i < 28; ++i) {
      Vec3 c = v.bitangents.items[i].line.coords();
      for (Complex& z : c) z = std::conj(z);
      conj[i] = v.bitangents.find(ProjLine(c));
      REQUIRE(conj[i] < 28);
    }
    std::map<std::size_t, std::size_t> orbit_of;
    for (std::size_t k = 0; k < v.orbits.orbits.size(); ++k)
      for (std::size_t m : v.orbits.orbits[k].members) orbit_of[m] = k;
    for (std::size_t k = 0; k < v.orbits.orbits.size(); ++k) {
      const Orbit& o = v.orbits.orbits[k];
      const std::size_t image = orbit_of[conj[o.members.front()]];
      for (std::size_t m : o.members) CHECK(orbit_of[conj[m]] == image);
      if (image == k && o.members.size() % 2 == 1) CHECK(o.real_count > 0);
    }
  }
}

TEST_CASE("automorphism search without catalog generators") {
  const TernaryQuartic fermat(from_terms({{{4, 0, 0}, 1.0}, {{0, 4, 0}, 1.0}, {{0, 0, 4}, 1.0}}));
  const auto aut = find_automorphisms(solve_all(fermat));
  CHECK(aut.size() == 96);
  for (const ProjTransform& g : aut) CHECK(act_on_quartic(g, fermat).distance(fermat) < 1e-8);

  std::mt19937_64 rng(21);
  const auto none = find_automorphisms(solve_all(TernaryQuartic(testutil::random_quartic(rng))));
  CHECK(none.size() == 1);
}

TEST_CASE("the two orders-96 and 4 decompositions as computed") {
  // Type II: the line x+y+z is fixed by the permutations, an S3, not a C6.
  const Verification& ii = verified(2);
  ExpectedPattern p2{"C4^2:S3", 96, {}};
  ExpectedTerm s3;
  s3.name = "S3";
  s3.stab_order = 6;
  s3.label = IsoLabel{IsoLabel::Kind::symmetric3, 6, false};
  p2.terms = {s3, cyc(1, 8)};
  CHECK(match_expected(*ii.instance.group, ii.orbits, ii.burnside, p2).ok());
  CHECK(!ii.report.ok());

  // Type X: every involution fixes four lines through its fixed point.
  const Verification& x = verified(10);
  ExpectedPattern p10{"K4", 4, {cyc(4, 1), cyc(2, 2), cyc(2, 2), cyc(2, 2)}};
  CHECK(match_expected(*x.instance.group, x.orbits, x.burnside, p10).ok());
  CHECK(!x.report.ok());
  std::set<std::vector<std::size_t>> stabs;
  for (const Orbit& o : x.orbits.orbits)
    if (o.stabilizer.order() == 2) stabs.insert(o.stabilizer.members);
  CHECK(stabs.size() == 3);
}
