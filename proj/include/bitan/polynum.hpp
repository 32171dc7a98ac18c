#pragma once

// Dense complex polynomials in one and two variables, Sylvester resultants,
// and simultaneous root finding.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace bitan {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Univariate polynomial, coeffs()[i] is the coefficient of t^i. Exact zero
/// leading coefficients are trimmed; the zero polynomial has no coefficients
/// and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs);
  UniPoly(std::initializer_list<Complex> coeffs) : UniPoly(std::vector<Complex>(coeffs)) {}

  /// The monic polynomial prod (t - r).
  static UniPoly from_roots(std::span<const Complex> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// Coefficient of t^i, zero beyond the degree.
  Complex operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Complex{}; }
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  double max_abs_coeff() const;

  Complex operator()(Complex t) const;
  UniPoly derivative() const;
  UniPoly scaled(Complex s) const;
  UniPoly monic() const;
  /// Drops leading coefficients whose modulus is <= rel_tol * max_abs_coeff().
  UniPoly trimmed(double rel_tol) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);

 private:
  std::vector<Complex> coeffs_;
};

enum class Var { u, v };

/// Bivariate polynomial with dense grid c[i][j] for u^i v^j.
class BiPoly {
 public:
  BiPoly() = default;
  /// rows index the power of u, columns the power of v; ragged rows are padded.
  explicit BiPoly(std::vector<std::vector<Complex>> grid);

  static BiPoly constant(Complex c);
  static BiPoly u_power(int k, Complex c = 1.0);
  static BiPoly v_power(int k, Complex c = 1.0);

  bool is_zero() const { return grid_.empty(); }
  int degree_u() const { return static_cast<int>(grid_.size()) - 1; }
  int degree_v() const { return grid_.empty() ? -1 : static_cast<int>(grid_[0].size()) - 1; }
  int degree_in(Var var) const { return var == Var::u ? degree_u() : degree_v(); }
  int total_degree() const;
  Complex coeff(int i, int j) const;
  double max_abs_coeff() const;

  Complex operator()(Complex u, Complex v) const;
  /// Substitute a value for one variable; the result is a polynomial in the other.
  UniPoly at(Var var, Complex value) const;
  /// Coefficients of `var`^k as polynomials in the other variable, k = 0..degree_in(var).
  std::vector<UniPoly> coefficients_in(Var var) const;

  BiPoly derivative(Var var) const;
  BiPoly scaled(Complex s) const;

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);

 private:
  void trim();
  std::vector<std::vector<Complex>> grid_;  // rectangular after construction
};

/// c4 t^4 + c3 t^3 + c2 t^2 + c1 t + c0, stored ascending.
struct BinaryQuartic {
  std::array<Complex, 5> c{};

  Complex operator()(Complex t) const {
    return (((c[4] * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0];
  }
  double scale() const;
};

struct ResultantOptions {
  /// Radius of the circle of sample points.
  double radius = 1.0;
};

/// Sylvester determinant of p and q viewed as polynomials in `var` of their
/// formal degrees, with coefficients evaluated at other = value.
Complex sylvester_determinant_at(const BiPoly& p, const BiPoly& q, Var var, Complex value);

/// Degree bound of Res_var(p, q) in the remaining variable.
int resultant_degree_bound(const BiPoly& p, const BiPoly& q, Var var);

/// Recovers the coefficients of a polynomial of degree < values.size() from
/// its values at radius * exp(2 pi i k / n), k = 0..n-1.
UniPoly interpolate_on_circle(std::span<const Complex> values, double radius);

/// Res_var(p, q) as a polynomial in the other variable, by evaluation on
/// scaled roots of unity and interpolation. Throws DegenerateElimination if
/// either operand is identically zero.
UniPoly resultant_wrt(const BiPoly& p, const BiPoly& q, Var var, ResultantOptions opts = {});

struct RootOptions {
  int max_iter = 200;
  std::uint64_t seed = 0x5eed;
  /// Leading coefficients below drop_tol * max|coeff| are trimmed first.
  double drop_tol = 1e-14;
};

/// Fujiwara's upper bound on the moduli of the roots.
double fujiwara_bound(const UniPoly& p);

/// All deg(p) roots by Aberth-Ehrlich iteration with Newton polishing. Every
/// returned r satisfies |p(r)| <= tol * max|coeff| * max(1,|r|)^deg; throws
/// NonConvergence(index) otherwise.
std::vector<Complex> roots_all(const UniPoly& p, double tol = 1e-10, RootOptions opts = {});

/// Groups approximations that belong to the same root. Two approximations
/// join when their distance is below cluster_tol or their inclusion disks
/// overlap. Returns clusters as index lists.
std::vector<std::vector<std::size_t>> cluster_roots(const UniPoly& p, std::span<const Complex> roots,
                                                    double cluster_tol);

/// Monic polynomial with one root per cluster (the cluster centroid).
UniPoly square_free_part(const UniPoly& p, double cluster_tol = 1e-6, RootOptions opts = {});

}  // namespace bitan
