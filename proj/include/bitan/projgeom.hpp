#pragma once

// Objects of the complex projective plane and its dual: ternary quartic
// forms, points, lines, and projective transformations acting on all three.
//
// Action convention: a transformation g sends a point p to g p, a form f to
// f o g^-1 and a line (row vector) l to l g^-1. With this choice the zero set
// of g.f is g applied to the zero set of f, and p on l implies g p on g.l.

#include <Eigen/Core>
#include <array>
#include <complex>
#include <cstddef>
#include <span>

#include "bitan/polynum.hpp"

namespace bitan {

using Vec3 = std::array<Complex, 3>;

inline constexpr double kDefaultMatchTol = 1e-6;
inline constexpr double kDefaultRealTol = 1e-6;

/// Relative tolerance used to decide ties between entries of equal modulus
/// when picking the canonical pivot.
inline constexpr double kPivotTieTol = 1e-9;

/// Index of the canonical pivot: the first entry whose modulus is within
/// kPivotTieTol of the maximum. Returns size() for an all-zero vector.
std::size_t canonical_pivot(std::span<const Complex> v);

/// Rescales v in place so its pivot entry equals 1. Throws
/// std::invalid_argument for the zero vector.
void canonicalize(std::span<Complex> v);

/// Entrywise distance between canonical(a) and b rescaled at the same pivot.
/// Returns +inf if b is nearly zero at that pivot.
double projective_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Exponents (i, j, k) of x^i y^j z^k for the 15 quartic monomials in
/// graded-lexicographic order: x^4, x^3y, x^3z, x^2y^2, ..., z^4.
struct Monomial {
  int x, y, z;
};
const std::array<Monomial, 15>& quartic_monomials();
std::size_t quartic_monomial_index(int i, int j, int k);

using QuarticCoeffs = std::array<Complex, 15>;

/// Coefficients of f(A x), where f is given by its 15 coefficients.
QuarticCoeffs substitute(const QuarticCoeffs& f, const Eigen::Matrix3cd& a);

class TernaryQuartic {
 public:
  /// Stores the coefficients in canonical scale. Throws std::invalid_argument
  /// if all are zero or any is non-finite.
  explicit TernaryQuartic(const QuarticCoeffs& coeffs);

  const QuarticCoeffs& coeffs() const { return coeffs_; }
  Complex coeff(int i, int j, int k) const { return coeffs_[quartic_monomial_index(i, j, k)]; }

  Complex operator()(const Vec3& p) const;
  Vec3 gradient(const Vec3& p) const;
  /// True if every coefficient has imaginary part below tol.
  bool has_real_coefficients(double tol = 1e-12) const;

  /// Entrywise distance of canonical forms.
  double distance(const TernaryQuartic& other) const;

 private:
  QuarticCoeffs coeffs_;
};

/// A point of the projective plane, canonically scaled.
class ProjPoint {
 public:
  explicit ProjPoint(const Vec3& coords);
  const Vec3& coords() const { return x_; }
  Complex operator[](std::size_t i) const { return x_[i]; }

 private:
  Vec3 x_;
};

/// The line a x + b y + c z = 0, canonically scaled.
class ProjLine {
 public:
  explicit ProjLine(const Vec3& dual);
  const Vec3& coords() const { return l_; }
  Complex operator[](std::size_t i) const { return l_[i]; }

  Complex incidence(const Vec3& p) const { return l_[0] * p[0] + l_[1] * p[1] + l_[2] * p[2]; }
  double distance(const ProjLine& other) const { return projective_distance(l_, other.l_); }
  bool matches(const ProjLine& other, double tol = kDefaultMatchTol) const { return distance(other) < tol; }

 private:
  Vec3 l_;
};

/// t -> base + t * direction, with t = infinity giving direction.
struct LineParametrization {
  Vec3 base;
  Vec3 direction;

  Vec3 at(Complex t) const;

  /// Projects the two standard basis vectors least aligned with the line
  /// normal onto the line.
  static LineParametrization for_line(const ProjLine& line);

  /// Chart parametrization for a line scaled so coordinate `pinned` equals
  /// 1: base = e_i - l_i e_pinned, direction = e_j - l_j e_pinned, where
  /// (i, j) are the two other indices in increasing order.
  static LineParametrization chart(const ProjLine& line, int pinned);
};

/// f(base + t direction) expanded in t. Degree collapse is preserved.
BinaryQuartic restrict_to_line(const TernaryQuartic& f, const LineParametrization& param);

/// An invertible 3x3 matrix up to scale, canonically scaled in row-major
/// order.
class ProjTransform {
 public:
  static constexpr double kMinDet = 1e-8;

  ProjTransform();  // identity
  explicit ProjTransform(const Eigen::Matrix3cd& m);

  const Eigen::Matrix3cd& matrix() const { return m_; }
  ProjTransform inverse() const;
  ProjTransform operator*(const ProjTransform& rhs) const;
  Vec3 apply(const Vec3& p) const;
  double distance(const ProjTransform& other) const;
  bool has_real_entries(double tol = 1e-12) const;

 private:
  Eigen::Matrix3cd m_;
};

TernaryQuartic act_on_quartic(const ProjTransform& g, const TernaryQuartic& f);
ProjLine act_on_line(const ProjTransform& g, const ProjLine& line);
ProjPoint act_on_point(const ProjTransform& g, const ProjPoint& p);

/// True iff some complex rescaling of the line has all imaginary parts below
/// tol: every 2x2 minor of [v; conj(v)] is smaller than tol in modulus.
bool line_is_real(const ProjLine& line, double tol = kDefaultRealTol);

}  // namespace bitan
