#pragma once

// The twelve automorphism types of smooth plane quartics: normal forms,
// generators, excluded parameter loci, expected bitangent orbit patterns and
// the parameter values used for the pictured examples.

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bitan/bitangent.hpp"
#include "bitan/equivariant.hpp"
#include "bitan/grp.hpp"

namespace bitan {

inline constexpr double kExclusionTol = 1e-9;

/// Coefficients affine-linear in the parameters: constant + sum p_i linear[i].
struct ParametricQuartic {
  std::vector<std::string> params;
  QuarticCoeffs constant{};
  std::vector<QuarticCoeffs> linear;

  QuarticCoeffs at(std::span<const Complex> p) const;
  /// The family f(M x), piece by piece.
  ParametricQuartic substituted(const Eigen::Matrix3cd& m) const;
};

struct Exclusion {
  std::string rule;
  /// Type the curve is promoted to, or "singular".
  std::string promoted;
  /// "theorem", "section" or "derived"; says where the rule comes from.
  std::string origin;
  /// Advisory rules are reported but do not reject parameters.
  bool rejects = true;
  /// Zero exactly on the locus.
  std::function<double(std::span<const Complex>)> distance;
};

struct FigureExample {
  std::vector<Complex> params;
  std::size_t real_count = 0;
  /// Set when the example is printed as an explicit quartic outside the
  /// normal form.
  std::optional<QuarticCoeffs> literal;
};

struct CurveType {
  int id = 0;
  std::string name;  // "I" .. "XII"
  std::string group_name;
  std::string gap_id;
  std::size_t order = 0;
  std::vector<std::string> param_names;
  /// Linear family in the linear parameters (equal to the user parameters
  /// except for Type XI, whose family is linear in a+b and ab).
  ParametricQuartic family;
  std::function<std::vector<Complex>(std::span<const Complex>)> linearize;
  std::vector<Eigen::Matrix3cd> generators;
  ExpectedPattern expected;
  std::vector<Exclusion> exclusions;
  std::vector<FigureExample> figures;
  std::string note;

  QuarticCoeffs equation(std::span<const Complex> params) const;
};

const std::vector<CurveType>& curve_types();
/// Accepts "IV" or "4" (case-insensitive). Throws ArityMismatch on unknown.
const CurveType& curve_type(std::string_view name);
const CurveType& curve_type(int id);

/// Closure of the type's generators, built once and shared.
const FiniteProjGroup& type_group(int id);

struct ExclusionHit {
  const Exclusion* rule;
  double distance;
};

/// Every exclusion rule within `tol` of the parameters, rejecting or not.
std::vector<ExclusionHit> exclusion_hits(const CurveType& t, std::span<const Complex> params,
                                         double tol = kExclusionTol);

struct Instance {
  const CurveType* type = nullptr;
  std::vector<Complex> params;
  bool literal = false;
  TernaryQuartic quartic{QuarticCoeffs{Complex(1.0)}};
  const FiniteProjGroup* group = nullptr;
  /// Advisory rules that fired.
  std::vector<std::string> warnings;
};

/// Throws ArityMismatch or ExcludedParameter (first rejecting rule).
Instance instantiate(const CurveType& t, std::span<const Complex> params);
/// The first pictured example (the printed literal for Type XII).
Instance instantiate_default(const CurveType& t);

struct Verification {
  Instance instance;
  BitangentSet bitangents;
  OrbitDecomposition orbits;
  BurnsideElement burnside;
  MatchReport report;
};

struct VerifyOptions {
  SolverConfig solver;
  /// Also search for automorphisms beyond the catalog group.
  bool probe_full_group = false;
};

/// instantiate, solve, check invariance, orbits, match. With no params the
/// default example is used and its real count is compared as well.
Verification verify_type(const CurveType& t, const std::optional<std::vector<Complex>>& params = std::nullopt,
                         const VerifyOptions& opt = {});

/// Parameter tuples at distance > margin from every exclusion locus,
/// real and imaginary parts uniform in [-range, range].
std::vector<std::vector<Complex>> random_valid_params(const CurveType& t, std::size_t count, std::mt19937_64& rng,
                                                      double margin = 1e-2, double range = 3.0);

struct IndependenceResult {
  bool equal = true;
  std::vector<std::vector<Complex>> samples;
  std::vector<BurnsideElement> decompositions;
};

/// Runs the full pipeline per sample and compares the decompositions.
IndependenceResult independence_check(const CurveType& t, const std::vector<std::vector<Complex>>& samples,
                                      const SolverConfig& cfg = {});

nlohmann::json catalog_row(const CurveType& t);

}  // namespace bitan
