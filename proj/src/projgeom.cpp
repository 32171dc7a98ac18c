#include "bitan/projgeom.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bitan {

std::size_t canonical_pivot(std::span<const Complex> v) {
  double m = 0.0;
  for (const Complex& z : v) m = std::max(m, std::abs(z));
  if (m == 0.0) return v.size();
  const double cut = m * (1.0 - kPivotTieTol);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) >= cut) return i;
  return v.size();
}

void canonicalize(std::span<Complex> v) {
  for (const Complex& z : v)
    if (!is_finite(z)) throw std::invalid_argument("non-finite projective coordinate");
  const std::size_t p = canonical_pivot(v);
  if (p == v.size()) throw std::invalid_argument("zero vector has no projective class");
  const Complex s = 1.0 / v[p];
  for (Complex& z : v) z *= s;
  v[p] = 1.0;
}

double projective_distance(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t p = canonical_pivot(a);
  if (p == a.size() || a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double bmax = 0.0;
  for (const Complex& z : b) bmax = std::max(bmax, std::abs(z));
  if (std::abs(b[p]) < 0.5 * bmax || b[p] == Complex{}) return std::numeric_limits<double>::infinity();
  const Complex sa = 1.0 / a[p], sb = 1.0 / b[p];
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] * sa - b[i] * sb));
  return d;
}

// ---------------------------------------------------------------- monomials

const std::array<Monomial, 15>& quartic_monomials() {
  static const std::array<Monomial, 15> table = [] {
    std::array<Monomial, 15> t{};
    std::size_t n = 0;
    for (int i = 4; i >= 0; --i)
      for (int j = 4 - i; j >= 0; --j) t[n++] = Monomial{i, j, 4 - i - j};
    return t;
  }();
  return table;
}

std::size_t quartic_monomial_index(int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0 || i + j + k != 4) throw std::invalid_argument("not a quartic monomial");
  // Monomials with x-degree > i come first: sum_{d=i+1}^{4} (5 - d).
  std::size_t idx = 0;
  for (int d = 4; d > i; --d) idx += static_cast<std::size_t>(5 - d);
  return idx + static_cast<std::size_t>(4 - i - j);
}

namespace {

// Dense ternary form of degree d, indexed by (i, j) with k = d - i - j.
struct Form {
  int degree = 0;
  std::vector<Complex> c;  // (degree+1)^2 grid, only i + j <= degree used

  explicit Form(int d) : degree(d), c(static_cast<std::size_t>((d + 1) * (d + 1))) {}
  Complex& at(int i, int j) { return c[static_cast<std::size_t>(i * (degree + 1) + j)]; }
  Complex at(int i, int j) const { return c[static_cast<std::size_t>(i * (degree + 1) + j)]; }
};

Form multiply(const Form& a, const Form& b) {
  Form r(a.degree + b.degree);
  for (int i = 0; i <= a.degree; ++i)
    for (int j = 0; i + j <= a.degree; ++j) {
      const Complex x = a.at(i, j);
      if (x == Complex{}) continue;
      for (int k = 0; k <= b.degree; ++k)
        for (int l = 0; k + l <= b.degree; ++l) r.at(i + k, j + l) += x * b.at(k, l);
    }
  return r;
}

}  // namespace

QuarticCoeffs substitute(const QuarticCoeffs& f, const Eigen::Matrix3cd& a) {
  // powers[r][e] = (row r of A . x)^e
  std::array<std::array<Form, 5>, 3> powers{
      {{Form(0), Form(1), Form(2), Form(3), Form(4)},
       {Form(0), Form(1), Form(2), Form(3), Form(4)},
       {Form(0), Form(1), Form(2), Form(3), Form(4)}}};
  for (int r = 0; r < 3; ++r) {
    Form lin(1);
    lin.at(1, 0) = a(r, 0);
    lin.at(0, 1) = a(r, 1);
    lin.at(0, 0) = a(r, 2);
    powers[r][0].at(0, 0) = 1.0;
    for (int e = 1; e <= 4; ++e) powers[r][e] = multiply(powers[r][e - 1], lin);
  }
  QuarticCoeffs out{};
  const auto& mons = quartic_monomials();
  for (std::size_t m = 0; m < 15; ++m) {
    if (f[m] == Complex{}) continue;
    const Form t = multiply(multiply(powers[0][mons[m].x], powers[1][mons[m].y]), powers[2][mons[m].z]);
    for (std::size_t n = 0; n < 15; ++n) out[n] += f[m] * t.at(mons[n].x, mons[n].y);
  }
  return out;
}

// ---------------------------------------------------------------- TernaryQuartic

TernaryQuartic::TernaryQuartic(const QuarticCoeffs& coeffs) : coeffs_(coeffs) { canonicalize(coeffs_); }

Complex TernaryQuartic::operator()(const Vec3& p) const {
  Complex acc{};
  const auto& mons = quartic_monomials();
  for (std::size_t m = 0; m < 15; ++m) {
    if (coeffs_[m] == Complex{}) continue;
    acc += coeffs_[m] * std::pow(p[0], mons[m].x) * std::pow(p[1], mons[m].y) * std::pow(p[2], mons[m].z);
  }
  return acc;
}

Vec3 TernaryQuartic::gradient(const Vec3& p) const {
  Vec3 g{};
  const auto& mons = quartic_monomials();
  auto ipow = [](Complex z, int e) {
    Complex r = 1.0;
    for (int i = 0; i < e; ++i) r *= z;
    return r;
  };
  for (std::size_t m = 0; m < 15; ++m) {
    const Complex c = coeffs_[m];
    if (c == Complex{}) continue;
    const auto [i, j, k] = mons[m];
    if (i > 0) g[0] += c * static_cast<double>(i) * ipow(p[0], i - 1) * ipow(p[1], j) * ipow(p[2], k);
    if (j > 0) g[1] += c * static_cast<double>(j) * ipow(p[0], i) * ipow(p[1], j - 1) * ipow(p[2], k);
    if (k > 0) g[2] += c * static_cast<double>(k) * ipow(p[0], i) * ipow(p[1], j) * ipow(p[2], k - 1);
  }
  return g;
}

bool TernaryQuartic::has_real_coefficients(double tol) const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [&](Complex z) { return std::abs(z.imag()) < tol; });
}

double TernaryQuartic::distance(const TernaryQuartic& other) const {
  return projective_distance(coeffs_, other.coeffs_);
}

// ---------------------------------------------------------------- points and lines

ProjPoint::ProjPoint(const Vec3& coords) : x_(coords) { canonicalize(x_); }

ProjLine::ProjLine(const Vec3& dual) : l_(dual) { canonicalize(l_); }

Vec3 LineParametrization::at(Complex t) const {
  return {base[0] + t * direction[0], base[1] + t * direction[1], base[2] + t * direction[2]};
}

LineParametrization LineParametrization::for_line(const ProjLine& line) {
  const Vec3& l = line.coords();
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(l[static_cast<std::size_t>(a)]) < std::abs(l[static_cast<std::size_t>(b)]); });
  double norm2 = 0.0;
  for (const Complex& z : l) norm2 += std::norm(z);
  auto project = [&](int idx) {
    Vec3 e{};
    e[static_cast<std::size_t>(idx)] = 1.0;
    const Complex s = l[static_cast<std::size_t>(idx)] / norm2;
    for (std::size_t r = 0; r < 3; ++r) e[r] -= s * std::conj(l[r]);
    return e;
  };
  const int i = std::min(order[0], order[1]);
  const int j = std::max(order[0], order[1]);
  return {project(i), project(j)};
}

LineParametrization LineParametrization::chart(const ProjLine& line, int pinned) {
  const auto k = static_cast<std::size_t>(pinned);
  const Vec3& raw = line.coords();
  if (raw[k] == Complex{}) throw std::invalid_argument("line lies at infinity of the requested chart");
  Vec3 l = raw;
  for (Complex& z : l) z /= raw[k];
  const std::size_t i = k == 0 ? 1 : 0;
  const std::size_t j = k == 2 ? 1 : 2;
  LineParametrization p{};
  p.base[i] = 1.0;
  p.base[k] = -l[i];
  p.direction[j] = 1.0;
  p.direction[k] = -l[j];
  return p;
}

BinaryQuartic restrict_to_line(const TernaryQuartic& f, const LineParametrization& param) {
  // pw[r][e] = (base_r + t dir_r)^e, ascending coefficients in t.
  std::array<std::array<std::array<Complex, 5>, 5>, 3> pw{};
  for (std::size_t r = 0; r < 3; ++r) {
    pw[r][0] = {1.0, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t e = 1; e <= 4; ++e)
      for (std::size_t d = 0; d <= e; ++d) {
        Complex v = pw[r][e - 1][d] * param.base[r];
        if (d > 0) v += pw[r][e - 1][d - 1] * param.direction[r];
        pw[r][e][d] = v;
      }
  }
  BinaryQuartic out;
  const auto& mons = quartic_monomials();
  for (std::size_t m = 0; m < 15; ++m) {
    const Complex c = f.coeffs()[m];
    if (c == Complex{}) continue;
    const auto& a = pw[0][static_cast<std::size_t>(mons[m].x)];
    const auto& b = pw[1][static_cast<std::size_t>(mons[m].y)];
    const auto& g = pw[2][static_cast<std::size_t>(mons[m].z)];
    for (std::size_t p = 0; p <= 4; ++p)
      for (std::size_t q = 0; p + q <= 4; ++q)
        for (std::size_t r = 0; p + q + r <= 4; ++r) out.c[p + q + r] += c * a[p] * b[q] * g[r];
  }
  return out;
}

// ---------------------------------------------------------------- transforms

namespace {

Eigen::Matrix3cd canonical_matrix(const Eigen::Matrix3cd& m) {
  std::array<Complex, 9> flat{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) flat[static_cast<std::size_t>(3 * r + c)] = m(r, c);
  canonicalize(flat);
  Eigen::Matrix3cd out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = flat[static_cast<std::size_t>(3 * r + c)];
  return out;
}

std::array<Complex, 9> flatten(const Eigen::Matrix3cd& m) {
  std::array<Complex, 9> flat{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) flat[static_cast<std::size_t>(3 * r + c)] = m(r, c);
  return flat;
}

}  // namespace

ProjTransform::ProjTransform() : m_(Eigen::Matrix3cd::Identity()) {}

ProjTransform::ProjTransform(const Eigen::Matrix3cd& m) : m_(canonical_matrix(m)) {
  if (std::abs(m_.determinant()) <= kMinDet) throw std::invalid_argument("projective transform is singular");
}

ProjTransform ProjTransform::inverse() const { return ProjTransform(m_.inverse()); }

ProjTransform ProjTransform::operator*(const ProjTransform& rhs) const { return ProjTransform(m_ * rhs.m_); }

Vec3 ProjTransform::apply(const Vec3& p) const {
  Vec3 out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[static_cast<std::size_t>(r)] += m_(r, c) * p[static_cast<std::size_t>(c)];
  return out;
}

double ProjTransform::distance(const ProjTransform& other) const {
  return projective_distance(flatten(m_), flatten(other.m_));
}

bool ProjTransform::has_real_entries(double tol) const {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (std::abs(m_(r, c).imag()) >= tol) return false;
  return true;
}

TernaryQuartic act_on_quartic(const ProjTransform& g, const TernaryQuartic& f) {
  return TernaryQuartic(substitute(f.coeffs(), g.matrix().inverse()));
}

ProjLine act_on_line(const ProjTransform& g, const ProjLine& line) {
  const Eigen::Matrix3cd inv = g.matrix().inverse();
  Vec3 out{};
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) out[static_cast<std::size_t>(c)] += line[static_cast<std::size_t>(r)] * inv(r, c);
  return ProjLine(out);
}

ProjPoint act_on_point(const ProjTransform& g, const ProjPoint& p) { return ProjPoint(g.apply(p.coords())); }

bool line_is_real(const ProjLine& line, double tol) {
  const Vec3& v = line.coords();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const Complex minor = v[i] * std::conj(v[j]) - v[j] * std::conj(v[i]);
      if (std::abs(minor) >= tol) return false;
    }
  return true;
}

}  // namespace bitan
