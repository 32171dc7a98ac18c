#pragma once

// Parsing and JSON shapes shared by the bitangents command line tool.
//
// Every document carries "schemaVersion": 1. Complex numbers are [re, im];
// lines and points are written in canonical scale.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bitan/bitangent.hpp"
#include "bitan/catalog.hpp"

namespace bitan::cli {

inline constexpr int kSchemaVersion = 1;

/// Bad flags, unreadable files, malformed JSON. Exit code 3.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  SolverConfig solver;
  std::optional<std::string> type;
  std::vector<std::string> params;  // "k=v"
  std::vector<double> coeffs;       // 15 re/im pairs
  std::string out;
  std::array<double, 4> window{-2.0, 2.0, -2.0, 2.0};  // xmin, xmax, ymin, ymax
  /// Otherwise plot picks a square window that every real line crosses.
  bool window_given = false;
  int grid = 512;
};

/// Reads `key = value` lines; '#' starts a comment. Keys: accept_tol,
/// match_tol, hyperflex_tol, max_iter, seed, grid, window. Unknown keys are a
/// usage error.
void load_config_file(const std::string& path, RunConfig& cfg);

/// Positive tolerances, grid >= 2, finite window with min < max.
void validate(const RunConfig& cfg);

/// "3", "-34/25", "1.5-2i", "i", "-0.5+0.866i".
Complex parse_complex(const std::string& s);
std::array<double, 4> parse_window(const std::string& s);

/// Catalog instance or explicit coefficients.
struct Source {
  const CurveType* type = nullptr;
  std::vector<Complex> params;
  bool literal = false;
  TernaryQuartic quartic{QuarticCoeffs{Complex(1.0)}};
  const FiniteProjGroup* group = nullptr;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

/// --type with --params (missing params fall back to the default example
/// when none are given), or --coeffs. Exactly one of the two.
Source resolve_source(const RunConfig& cfg);
Source from_instance(const Instance& inst);

nlohmann::json complex_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json vec_json(const Vec3& v);
Vec3 vec_from_json(const nlohmann::json& j);
nlohmann::json quartic_json(const TernaryQuartic& f);
TernaryQuartic quartic_from_json(const nlohmann::json& j);

nlohmann::json solve_json(const Source& src, const BitangentSet& s);
/// Inverse of solve_json for the fields the orbit computation needs.
BitangentSet bitangents_from_json(const nlohmann::json& doc);

nlohmann::json error_json(const std::string& kind, const std::string& message,
                          const nlohmann::json& detail = nullptr);

}  // namespace bitan::cli
