#pragma once

// Orbits of a finite projective group on the 28 bitangents and their
// Burnside-set decomposition sum_i m_i [G/H_i].

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bitan/bitangent.hpp"
#include "bitan/grp.hpp"

namespace bitan {

struct Orbit {
  std::vector<std::size_t> members;  // indices into BitangentSet::items
  std::size_t representative = 0;
  Subgroup stabilizer;
  IsoLabel label;
  /// Index into OrbitDecomposition::stabilizer_classes.
  std::size_t stab_class = 0;
  bool central = false;
  std::size_t real_count = 0;
};

struct OrbitDecomposition {
  std::size_t group_order = 0;
  std::vector<Orbit> orbits;
  /// One representative subgroup per conjugacy class of stabilizers, in order
  /// of first appearance.
  std::vector<Subgroup> stabilizer_classes;
};

struct BurnsideTerm {
  std::size_t stab_class = 0;
  std::size_t orbit_size = 0;
  std::size_t stab_order = 0;
  IsoLabel label;
  bool central = false;
  /// Conjugacy-class size in G of a generator, for cyclic stabilizers of
  /// order > 1; 0 otherwise. Separates e.g. odd and even involutions of S4.
  std::size_t generator_class_size = 0;
  std::size_t multiplicity = 0;
  /// Sum of real lines over the orbits of this term.
  std::size_t real_count = 0;
};

struct BurnsideElement {
  std::size_t group_order = 0;
  std::vector<BurnsideTerm> terms;

  std::size_t total() const;
};

struct ExpectedTerm {
  std::string name;  // display name of the stabilizer, e.g. "C2^o"
  std::size_t multiplicity = 1;
  std::size_t stab_order = 1;
  IsoLabel label;
  std::optional<bool> central;
  std::optional<std::size_t> generator_class_size;
};

/// Every term stands for its own conjugacy class of stabilizers: terms must
/// match computed classes one to one, so distinct terms are required to be
/// non-conjugate.
struct ExpectedPattern {
  std::string group_name;
  std::size_t group_order = 0;
  std::vector<ExpectedTerm> terms;

  std::size_t total() const;
  /// "m[G/H] + ..." in pattern order.
  std::string str() const;
};

struct MatchReport {
  std::string type;
  std::size_t group_order = 0;
  std::string computed;
  std::string expected;
  nlohmann::json computed_terms = nlohmann::json::array();
  nlohmann::json expected_terms = nlohmann::json::array();
  std::vector<std::string> mismatches;
  /// For each computed term, the index of the expected term it matched, or
  /// npos.
  std::vector<std::size_t> assignment;
  nlohmann::json extra = nlohmann::json::object();

  bool ok() const { return mismatches.empty(); }
  nlohmann::json to_json() const;
};

/// Throws NotInvariant if a generator sends a bitangent outside the set.
OrbitDecomposition compute_orbits(const FiniteProjGroup& g, const BitangentSet& s);

BurnsideElement to_burnside(const FiniteProjGroup& g, const OrbitDecomposition& d);

/// Terms in ascending stabilizer order; ties keep their order in b. `names`
/// supplies the subgroup display name per term (default: the iso label, "e"
/// for the trivial group).
std::string format_burnside(const BurnsideElement& b, const std::string& group_name,
                            const std::vector<std::string>& names = {});

/// The G-set restricted to the subgroup h of g, as an h-set.
BurnsideElement restrict_action(const FiniteProjGroup& g, const Subgroup& h, const BitangentSet& s);

/// The subgroup h of g as a group in its own right.
FiniteProjGroup as_group(const FiniteProjGroup& g, const Subgroup& h);

MatchReport match_expected(const FiniteProjGroup& g, const OrbitDecomposition& d, const BurnsideElement& b,
                           const ExpectedPattern& p);

/// True iff the two decompositions agree term by term up to a bijection of
/// stabilizer classes preserving (orbit size, stabilizer order, label,
/// centrality, generator class size, multiplicity).
bool burnside_equivalent(const BurnsideElement& a, const BurnsideElement& b);

nlohmann::json to_json(const OrbitDecomposition& d);
nlohmann::json to_json(const BurnsideElement& b);

/// All projective transformations g with g.f proportional to f, found by
/// sending a fixed frame of four bitangents in general position to every
/// ordered quadruple of bitangents. Independent of any catalog generators.
std::vector<ProjTransform> find_automorphisms(const BitangentSet& s, double tol = 1e-6);

}  // namespace bitan
