#pragma once

// Finite subgroups of PGL3(C) given by generators. Elements are matched by
// canonical-form distance, so every query works on integer indices into the
// element list once the closure is built.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bitan/projgeom.hpp"

namespace bitan {

inline constexpr std::size_t kDefaultGroupCap = 200;

/// Sorted member indices into a FiniteProjGroup. Always contains 0, the
/// identity. Subgroups do not own their parent; pass the group alongside.
struct Subgroup {
  std::vector<std::size_t> members;

  std::size_t order() const { return members.size(); }
  bool contains(std::size_t i) const;
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

struct IsoLabel {
  enum class Kind { cyclic, klein, symmetric3, dihedral8, other };
  Kind kind = Kind::cyclic;
  std::size_t order = 1;
  bool abelian = true;

  /// "C6", "K4", "S3", "D8", or "other(12,nonabelian)".
  std::string str() const;
  friend bool operator==(const IsoLabel&, const IsoLabel&) = default;
};

class FiniteProjGroup {
 public:
  /// Breadth-first closure under right multiplication by the generators.
  /// Throws CapExceeded when more than `cap` elements appear and
  /// AmbiguousMatch when a product lands between match_tol and
  /// 10 * match_tol of an existing element.
  static FiniteProjGroup closure(std::span<const ProjTransform> gens, std::size_t cap = kDefaultGroupCap,
                                 double match_tol = kDefaultMatchTol);

  std::size_t order() const { return elements_.size(); }
  const ProjTransform& element(std::size_t i) const { return elements_[i]; }
  const std::vector<ProjTransform>& elements() const { return elements_; }
  /// Indices of the generators in the element list.
  const std::vector<std::size_t>& generators() const { return gens_; }
  double match_tol() const { return tol_; }

  std::size_t mul(std::size_t i, std::size_t j) const { return table_[i * order() + j]; }
  std::size_t inv(std::size_t i) const { return inv_[i]; }
  std::size_t conjugate(std::size_t g, std::size_t h) const { return mul(mul(g, h), inv(g)); }

  /// Index of the element matching g, or npos.
  std::size_t find(const ProjTransform& g) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t element_order(std::size_t i) const;
  bool is_abelian() const;
  Subgroup whole() const;
  Subgroup trivial() const { return Subgroup{{0}}; }
  Subgroup center() const;
  Subgroup generated_by(std::span<const std::size_t> gens) const;
  /// True if members are closed under multiplication and contain 0.
  bool is_subgroup(const Subgroup& h) const;

  /// Conjugacy classes ordered by smallest member; members sorted.
  const std::vector<std::vector<std::size_t>>& conjugacy_classes() const { return classes_; }
  std::size_t class_size_of(std::size_t i) const { return classes_[class_of_[i]].size(); }

  Subgroup conjugate(const Subgroup& h, std::size_t g) const;
  /// Brute force over all g in G.
  bool subgroups_conjugate(const Subgroup& a, const Subgroup& b) const;
  /// True if every member of h commutes with every element of G.
  bool is_central(const Subgroup& h) const;
  IsoLabel iso_label(const Subgroup& h) const;

  /// All subgroups of the given order generated by at most two elements,
  /// sorted by member list.
  std::vector<Subgroup> subgroups_of_order(std::size_t n) const;

 private:
  std::vector<ProjTransform> elements_;
  std::vector<std::size_t> gens_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inv_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
  double tol_ = kDefaultMatchTol;
};

/// { g : g.L = L } with canonical line matching at the group's tolerance.
Subgroup stabilizer(const FiniteProjGroup& g, const ProjLine& line);

}  // namespace bitan
