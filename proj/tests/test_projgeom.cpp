#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "bitan/projgeom.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bitan;
using testutil::random_complex;
using testutil::random_matrix;
using testutil::random_quartic;
using testutil::random_vec3;

namespace {

const Complex I{0.0, 1.0};

QuarticCoeffs from_terms(std::initializer_list<std::pair<std::array<int, 3>, Complex>> terms) {
  QuarticCoeffs c{};
  for (const auto& [e, v] : terms) c[quartic_monomial_index(e[0], e[1], e[2])] += v;
  return c;
}

double vec_distance(std::span<const Complex> a, std::span<const Complex> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Gaussian integers over arbitrary-precision integers.
using BigInt = boost::multiprecision::cpp_int;
struct GInt {
  BigInt re, im;
};
GInt operator+(const GInt& a, const GInt& b) { return {a.re + b.re, a.im + b.im}; }
GInt operator*(const GInt& a, const GInt& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

GInt gpow(const GInt& z, int e) {
  GInt r{1, 0};
  for (int i = 0; i < e; ++i) r = r * z;
  return r;
}

// Coefficients of f(base + t dir) by expanding every monomial separately,
// evaluating at t = 0..4 exactly and solving the Vandermonde system with
// divided differences over the rationals.
std::array<Complex, 5> exact_restriction(const std::array<std::array<long, 2>, 15>& f, const std::array<GInt, 3>& base,
                                         const std::array<GInt, 3>& dir) {
  using boost::multiprecision::cpp_rational;
  std::array<GInt, 5> values{};
  for (int t = 0; t <= 4; ++t) {
    std::array<GInt, 3> p;
    for (int r = 0; r < 3; ++r) p[static_cast<std::size_t>(r)] = base[static_cast<std::size_t>(r)] + GInt{t, 0} * dir[static_cast<std::size_t>(r)];
    GInt acc{0, 0};
    const auto& mons = quartic_monomials();
    for (std::size_t m = 0; m < 15; ++m) {
      const GInt c{f[m][0], f[m][1]};
      acc = acc + c * gpow(p[0], mons[m].x) * gpow(p[1], mons[m].y) * gpow(p[2], mons[m].z);
    }
    values[static_cast<std::size_t>(t)] = acc;
  }
  // Newton divided differences on nodes 0..4, then expand to monomial basis.
  std::array<cpp_rational, 5> dre, dim;
  for (int i = 0; i < 5; ++i) {
    dre[static_cast<std::size_t>(i)] = cpp_rational(values[static_cast<std::size_t>(i)].re);
    dim[static_cast<std::size_t>(i)] = cpp_rational(values[static_cast<std::size_t>(i)].im);
  }
  for (int lvl = 1; lvl < 5; ++lvl)
    for (int i = 4; i >= lvl; --i) {
      dre[static_cast<std::size_t>(i)] = (dre[static_cast<std::size_t>(i)] - dre[static_cast<std::size_t>(i - 1)]) / lvl;
      dim[static_cast<std::size_t>(i)] = (dim[static_cast<std::size_t>(i)] - dim[static_cast<std::size_t>(i - 1)]) / lvl;
    }
  std::array<cpp_rational, 5> cre{}, cim{};
  for (int i = 4; i >= 0; --i) {
    // c <- c * (t - i) + d_i
    for (int k = 4; k >= 1; --k) {
      cre[static_cast<std::size_t>(k)] = cre[static_cast<std::size_t>(k - 1)] - i * cre[static_cast<std::size_t>(k)];
      cim[static_cast<std::size_t>(k)] = cim[static_cast<std::size_t>(k - 1)] - i * cim[static_cast<std::size_t>(k)];
    }
    cre[0] = -i * cre[0] + dre[static_cast<std::size_t>(i)];
    cim[0] = -i * cim[0] + dim[static_cast<std::size_t>(i)];
  }
  std::array<Complex, 5> out{};
  for (std::size_t k = 0; k < 5; ++k) out[k] = {static_cast<double>(cre[k]), static_cast<double>(cim[k])};
  return out;
}

}  // namespace

TEST_CASE("monomial order") {
  const auto& m = quartic_monomials();
  CHECK(m[0].x == 4);
  CHECK((m[1].x == 3 && m[1].y == 1));
  CHECK((m[2].x == 3 && m[2].z == 1));
  CHECK((m[14].z == 4));
  for (std::size_t i = 0; i < 15; ++i) CHECK(quartic_monomial_index(m[i].x, m[i].y, m[i].z) == i);
}

TEST_CASE("canonical scaling") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 v = random_vec3(rng);
    Complex lambda = random_complex(rng, 5.0);
    if (std::abs(lambda) < 1e-3) lambda = 1.0;
    Vec3 a = v, b = v;
    for (auto& z : b) z *= lambda;
    canonicalize(a);
    canonicalize(b);
    CHECK(vec_distance(a, b) < 1e-10);
    Vec3 c = a;
    canonicalize(c);
    CHECK(vec_distance(a, c) == 0.0);
  }
  Vec3 tie{Complex{0, 1}, 1.0, 0.5};
  canonicalize(tie);
  CHECK(tie[0] == Complex(1.0));
  Vec3 zero{};
  CHECK_THROWS(canonicalize(zero));
}

TEST_CASE("restriction to a coordinate line") {
  const LineParametrization p{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  const TernaryQuartic fermat(from_terms({{{4, 0, 0}, 1.0}, {{0, 4, 0}, 1.0}, {{0, 0, 4}, 1.0}}));
  const auto r = restrict_to_line(fermat, p);
  CHECK(vec_distance(r.c, std::array<Complex, 5>{1.0, 0.0, 0.0, 0.0, 1.0}) == 0.0);

  const TernaryQuartic klein(from_terms({{{3, 1, 0}, 1.0}, {{0, 3, 1}, 1.0}, {{1, 0, 3}, 1.0}}));
  const auto k = restrict_to_line(klein, p);
  CHECK(vec_distance(k.c, std::array<Complex, 5>{0.0, 1.0, 0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("restriction matches exact expansion") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<std::array<long, 2>, 15> fi{};
    QuarticCoeffs fc{};
    for (std::size_t m = 0; m < 15; ++m) {
      fi[m] = {d(rng), d(rng)};
      fc[m] = Complex(static_cast<double>(fi[m][0]), static_cast<double>(fi[m][1]));
    }
    if (std::all_of(fc.begin(), fc.end(), [](Complex z) { return z == Complex{}; })) continue;
    std::array<GInt, 3> base, dir;
    Vec3 bv, dv;
    for (std::size_t r = 0; r < 3; ++r) {
      const long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
      base[r] = {a, b};
      dir[r] = {c, e};
      bv[r] = Complex(static_cast<double>(a), static_cast<double>(b));
      dv[r] = Complex(static_cast<double>(c), static_cast<double>(e));
    }
    const TernaryQuartic f(fc);
    // f is stored canonically; undo the scale before comparing.
    const std::size_t piv = canonical_pivot(fc);
    const Complex scale = fc[piv];
    const auto got = restrict_to_line(f, {bv, dv});
    const auto want = exact_restriction(fi, base, dir);
    double wmax = 0.0;
    for (const auto& z : want) wmax = std::max(wmax, std::abs(z));
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(got.c[k] * scale - want[k]) <= 1e-10 * std::max(1.0, wmax));
  }
}

TEST_CASE("line parametrizations lie on the line") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const ProjLine l(random_vec3(rng));
    const auto p = LineParametrization::for_line(l);
    CHECK(std::abs(l.incidence(p.base)) < 1e-10);
    CHECK(std::abs(l.incidence(p.direction)) < 1e-10);
    CHECK(projective_distance(p.base, p.direction) > 1e-3);
    for (int k = 0; k < 3; ++k) {
      const auto c = LineParametrization::chart(l, k);
      CHECK(std::abs(l.incidence(c.base)) < 1e-10);
      CHECK(std::abs(l.incidence(c.direction)) < 1e-10);
    }
  }
}

TEST_CASE("actions on forms") {
  const TernaryQuartic fermat(from_terms({{{4, 0, 0}, 1.0}, {{0, 4, 0}, 1.0}, {{0, 0, 4}, 1.0}}));
  CHECK(act_on_quartic(ProjTransform(), fermat).distance(fermat) < 1e-14);
  Eigen::Matrix3cd cyc;
  cyc << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  CHECK(act_on_quartic(ProjTransform(cyc), fermat).distance(fermat) < 1e-14);

  const Complex a{0.3, 0.1}, b{-1.2, 0}, c{2.0, 0.5}, dd{0.7, -0.4};
  const TernaryQuartic xii(from_terms({{{4, 0, 0}, 1.0},
                                       {{0, 4, 0}, 1.0},
                                       {{0, 0, 4}, 1.0},
                                       {{2, 2, 0}, a},
                                       {{2, 1, 1}, b},
                                       {{2, 0, 2}, c},
                                       {{0, 2, 2}, dd}}));
  const ProjTransform flip(Eigen::Vector3cd(-1.0, 1.0, 1.0).asDiagonal());
  CHECK(act_on_quartic(flip, xii).distance(xii) < 1e-14);

  // zero set transforms covariantly: f(p) = 0 implies (g.f)(g p) = 0
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const TernaryQuartic f(random_quartic(rng));
    const ProjTransform g(random_matrix(rng));
    const Vec3 p = random_vec3(rng);
    const TernaryQuartic gf = act_on_quartic(g, f);
    // compare ratios f(p) / (g.f)(g p) for two points
    const Vec3 q = random_vec3(rng);
    const Complex r1 = f(p) / gf(g.apply(p));
    const Complex r2 = f(q) / gf(g.apply(q));
    CHECK(std::abs(r1 - r2) < 1e-8 * std::abs(r1));
  }
}

TEST_CASE("actions on lines and points") {
  const ProjLine x0({1.0, 0.0, 0.0});
  CHECK(act_on_line(ProjTransform(), x0).distance(x0) == 0.0);

  Eigen::Matrix3cd cyc;  // (x, y, z) -> (z, x, y) as a point map
  cyc << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  const ProjTransform g(cyc);
  // x = 0 is sent to the line through g(0,1,0) = (0,0,1) and g(0,0,1) = (1,0,0), i.e. y = 0
  CHECK(act_on_line(g, x0).distance(ProjLine({0.0, 1.0, 0.0})) < 1e-14);

  const Complex z3 = std::polar(1.0, 2.0 * M_PI / 3.0);
  const ProjTransform d(Eigen::Vector3cd(z3, z3 * z3, 1.0).asDiagonal());
  const ProjPoint p = act_on_point(d, ProjPoint({1.0, 1.0, 1.0}));
  CHECK(vec_distance(p.coords(), ProjPoint({z3, z3 * z3, 1.0}).coords()) < 1e-14);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const ProjTransform h(random_matrix(rng));
    const ProjLine l(random_vec3(rng));
    const auto par = LineParametrization::for_line(l);
    const ProjPoint q(par.at(random_complex(rng)));
    const ProjPoint hq = act_on_point(h, q);
    const ProjLine hl = act_on_line(h, l);
    CHECK(std::abs(hl.incidence(hq.coords())) < 1e-8);
  }
}

TEST_CASE("action contract and transported restriction") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const ProjTransform g(random_matrix(rng)), h(random_matrix(rng));
    const ProjLine l(random_vec3(rng));
    CHECK(act_on_line(g * h, l).matches(act_on_line(g, act_on_line(h, l))));

    const TernaryQuartic f(random_quartic(rng));
    const auto par = LineParametrization::for_line(l);
    const LineParametrization moved{g.apply(par.base), g.apply(par.direction)};
    const auto a = restrict_to_line(f, par);
    const auto b = restrict_to_line(act_on_quartic(g, f), moved);
    auto ca = a.c, cb = b.c;
    canonicalize(ca);
    canonicalize(cb);
    CHECK(vec_distance(ca, cb) < 1e-7);
  }
}

TEST_CASE("line realness") {
  CHECK(line_is_real(ProjLine({1.0, 1.0, 1.0})));
  CHECK(line_is_real(ProjLine({I, I, I})));
  CHECK_FALSE(line_is_real(ProjLine({1.0, I, 0.0})));
  CHECK(line_is_real(ProjLine({2.0 * I, -I, 0.0})));
}

TEST_CASE("transforms") {
  Eigen::Matrix3cd sing = Eigen::Matrix3cd::Zero();
  sing(0, 0) = 1.0;
  CHECK_THROWS(ProjTransform(sing));
  std::mt19937_64 rng(12);
  const ProjTransform g(random_matrix(rng));
  CHECK((g * g.inverse()).distance(ProjTransform()) < 1e-10);
}
