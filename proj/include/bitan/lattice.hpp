#pragma once

// Special parameter values at which a family acquires extra symmetry, and
// the edges of the subgroup lattice between the twelve types.

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bitan/catalog.hpp"

namespace bitan {

/// params = offset + sum t_k basis[k], with basis in reduced echelon form
/// and offset zero at the pivot coordinates.
struct AffineSolution {
  std::vector<Complex> lambdas;  // g_i . f = lambda_i f
  std::vector<Complex> offset;
  std::vector<std::vector<Complex>> basis;
  double residual = 0.0;

  bool contains(std::span<const Complex> p, double tol = 1e-9) const;
  /// e.g. "b = 0; a free".
  std::string describe(const std::vector<std::string>& names) const;
};

struct SpecializationResult {
  std::vector<std::string> params;
  std::vector<AffineSolution> solutions;

  bool feasible() const { return !solutions.empty(); }
  bool contains(std::span<const Complex> p, double tol = 1e-9) const;
  nlohmann::json to_json() const;
};

/// Solves g.f = lambda f for the parameters of a linear family, jointly for
/// all generators. lambda runs over the eigenvalues of f -> f o g^-1 on the
/// 15-dimensional coefficient space. Throws DegenerateFamily when the family
/// has no parameters.
SpecializationResult specialize(const ParametricQuartic& family, std::span<const ProjTransform> gens,
                                double tol = 1e-9);

struct LatticeCheck {
  std::string method;  // "direct", "conjugated" or "witness"
  std::string claim;   // the value being checked
  /// False for checks of corrected loci that are not part of the edge label.
  bool label = true;
  bool confirmed = false;
  nlohmann::json detail = nlohmann::json::object();
};

struct LatticeEdge {
  std::string from, to;
  std::string label;
  bool dashed = false;
  std::vector<LatticeCheck> checks;
  std::string note;

  /// Every label check confirmed.
  bool confirmed() const;
  nlohmann::json to_json() const;
};

std::vector<LatticeEdge> lattice_report();

/// Automorphisms of the curve outside the catalog group of `t`.
std::vector<ProjTransform> extra_automorphisms(const CurveType& t, const TernaryQuartic& f,
                                               std::size_t* full_order = nullptr);

}  // namespace bitan
