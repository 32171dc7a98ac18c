#pragma once

// The 28 bitangents of a smooth plane quartic.
//
// A line L is a bitangent iff f restricted to L is a constant times the
// square of a quadratic. In a dual chart the restriction has coefficients
// c_0..c_4 that are polynomials in the two free line coordinates (u, v);
// the square condition is G1 = G2 = 0 (see perfect_square_conditions).
// Eliminating u leaves a univariate polynomial in v whose roots, after the
// spurious factor c_4(v)^8 is divided out, are the v-coordinates of the 28
// lines. Every candidate is then refined by Newton's method on the
// coefficient-matching system in the original coordinates.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bitan/polynum.hpp"
#include "bitan/projgeom.hpp"

namespace bitan {

struct SolverConfig {
  double accept_tol = 1e-8;
  double match_tol = kDefaultMatchTol;
  double hyperflex_tol = 1e-7;
  double real_tol = kDefaultRealTol;
  /// Iteration cap of the root finder.
  int max_iter = 200;
  std::uint64_t seed = 0x5eed;
  /// Which dual charts (pinned coordinate x, y, z) take part.
  std::array<bool, 3> charts{true, true, true};
};

struct Bitangent {
  ProjLine line;
  /// q with f|_L = alpha q^2, in the parameter of the chart parametrization
  /// of `line` (LineParametrization::chart with pinned = `chart`).
  UniPoly tangency_quadratic;
  int chart = 0;
  std::array<ProjPoint, 2> tangency_points;
  double residual = 0.0;
  bool is_real = false;
  bool is_hyperflex = false;
};

struct ChartDiagnostics {
  int pinned = 0;
  int degree = 0;
  std::size_t candidates = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double tail_ratio = 0.0;
};

struct SolverDiagnostics {
  std::vector<ChartDiagnostics> charts;
  std::uint64_t seed = 0;
  int attempts = 0;
  std::size_t duplicates = 0;
  std::size_t hyperflexes = 0;
  double max_residual = 0.0;

  std::string to_json() const;
};

struct BitangentSet {
  std::vector<Bitangent> items;
  TernaryQuartic source;
  SolverDiagnostics diagnostics;

  /// Index of the bitangent matching `line`, or items.size().
  std::size_t find(const ProjLine& line, double tol = kDefaultMatchTol) const;
};

/// (G1, G2) with G1 = c3^3 - 4 c4 c3 c2 + 8 c4^2 c1 and
/// G2 = (4 c4 c2 - c3^2)^2 - 64 c4^3 c0. For c4 != 0 both vanish iff the
/// binary quartic is c4 times the square of a monic quadratic.
std::pair<Complex, Complex> perfect_square_conditions(const BinaryQuartic& c);

/// Coefficients c_0..c_4 of f restricted to the chart line, as polynomials in
/// the chart's free coordinates: for pinned k and free i < j, the line is
/// l_i = u, l_j = v, l_k = 1 and the parametrization is that of
/// LineParametrization::chart.
std::array<BiPoly, 5> chart_restriction(const TernaryQuartic& f, int pinned);

BitangentSet solve_all(const TernaryQuartic& f, const SolverConfig& cfg = {});

/// Newton refinement of a candidate line. Throws NonConvergence if the
/// relative residual stays above cfg.accept_tol or the iteration wanders
/// away from the candidate.
Bitangent polish(const TernaryQuartic& f, const ProjLine& candidate, const SolverConfig& cfg = {});

std::size_t count_real(const BitangentSet& s);

}  // namespace bitan
