#pragma once

// Real picture of a quartic in the chart z = 1 with its real bitangents.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "bitan/projgeom.hpp"

namespace bitan::cli {

struct PlotClass {
  std::string name;  // legend text
  std::size_t lines = 0;
};

struct PlotLine {
  ProjLine line;
  std::size_t color_class = 0;
};

struct PlotInput {
  const TernaryQuartic* quartic = nullptr;
  std::vector<PlotLine> lines;  // real lines only
  std::vector<PlotClass> classes;
  std::array<double, 4> window{-2.0, 2.0, -2.0, 2.0};
  int grid = 512;
  std::string title;
};

struct PlotResult {
  std::string svg;
  /// Marching squares found at least one sign change.
  bool curve_drawn = false;
  /// False when the coefficients are not real and contouring was skipped.
  bool contoured = false;
  std::size_t segments = 0;
  std::size_t lines_drawn = 0;
  /// Real lines z = 0, invisible in the chart.
  std::size_t lines_at_infinity = 0;
};

/// Deterministic SVG 1.1.
PlotResult render_svg(const PlotInput& in);

/// Real coefficients (a, b, c) of a real line, largest entry positive.
std::array<double, 3> real_line(const ProjLine& line);

}  // namespace bitan::cli
