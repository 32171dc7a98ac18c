#include <algorithm>
#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_complex.hpp>

#include "bitan/errors.hpp"
#include "bitan/polynum.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bitan;
using testutil::random_complex;
using testutil::random_in_disk;

namespace {

double coeff_distance(const UniPoly& a, const UniPoly& b) {
  double d = 0.0;
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// prod (t - r) expanded in 50-digit arithmetic and rounded once, so the
// test polynomial's own roots sit where they were put.
UniPoly accurate_from_roots(const std::vector<Complex>& roots) {
  using Big = boost::multiprecision::cpp_complex_50;
  std::vector<Big> c{Big(1)};
  for (const Complex& r : roots) {
    const Big br(r.real(), r.imag());
    c.push_back(Big(0));
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - br * c[i];
    c[0] = -br * c[0];
  }
  std::vector<Complex> out;
  for (const Big& z : c) out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  return UniPoly(out);
}

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto one_way = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    double worst = 0.0;
    for (const Complex& p : x) {
      double best = INFINITY;
      for (const Complex& q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

BiPoly random_bipoly(std::mt19937_64& rng, int du, int dv) {
  std::vector<std::vector<Complex>> g(static_cast<std::size_t>(du + 1), std::vector<Complex>(static_cast<std::size_t>(dv + 1)));
  for (auto& row : g)
    for (auto& z : row) z = random_complex(rng);
  return BiPoly(g);
}

}  // namespace

TEST_CASE("univariate arithmetic") {
  const UniPoly p{1.0, 1.0};
  const UniPoly q{-1.0, 1.0};
  CHECK(coeff_distance(p * q, UniPoly{-1.0, 0.0, 1.0}) == 0.0);
  CHECK(coeff_distance(UniPoly{0, 0, 0, 0, 1.0}.derivative(), UniPoly{0, 0, 0, 4.0}) == 0.0);
  CHECK((p - p).is_zero());
  CHECK((p * q).degree() == 2);
  CHECK(UniPoly{2.0, 0.0, 0.0}.degree() == 0);
}

TEST_CASE("bivariate partial evaluation") {
  // t^2 - x with t as u and x as v
  const BiPoly f = BiPoly::u_power(2) - BiPoly::v_power(1);
  const UniPoly g = f.at(Var::u, 1.0);
  CHECK(coeff_distance(g, UniPoly{1.0, -1.0}) == 0.0);
  CHECK(f.total_degree() == 2);
  CHECK(f.derivative(Var::u).degree_u() == 1);
}

TEST_CASE("resultants of small examples") {
  const Complex a{0.3, -1.2}, b{2.0, 0.5};
  // p = v - a, q = v - b with constant coefficients in u
  const BiPoly p = BiPoly::v_power(1) - BiPoly::constant(a);
  const BiPoly q = BiPoly::v_power(1) - BiPoly::constant(b);
  const UniPoly r = resultant_wrt(p, q, Var::v);
  CHECK(std::abs(r[0] - (a - b)) < 1e-12);
  CHECK(r.degree() == 0);

  const BiPoly p2 = BiPoly::v_power(2) - BiPoly::u_power(1);
  const BiPoly q2 = BiPoly::v_power(1) - BiPoly::constant(1.0);
  CHECK(coeff_distance(resultant_wrt(p2, q2, Var::v), UniPoly{1.0, -1.0}) < 1e-12);

  std::mt19937_64 rng(7);
  const BiPoly s = random_bipoly(rng, 2, 3);
  CHECK(resultant_wrt(s, s, Var::v).is_zero());

  CHECK_THROWS_AS(resultant_wrt(BiPoly{}, s, Var::u), DegenerateElimination);
}

TEST_CASE("resultant multiplicativity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const BiPoly p = random_bipoly(rng, 1 + trial % 3, 1 + trial % 2);
    const BiPoly q = random_bipoly(rng, 2, 1 + (trial + 1) % 3);
    const BiPoly r = random_bipoly(rng, 1 + (trial + 2) % 3, 2);
    const UniPoly lhs = resultant_wrt(p * q, r, Var::v);
    const UniPoly rhs = resultant_wrt(p, r, Var::v) * resultant_wrt(q, r, Var::v);
    CHECK(coeff_distance(lhs, rhs) <= 1e-6 * rhs.max_abs_coeff());
  }
}

TEST_CASE("roots of simple polynomials") {
  auto r = roots_all(UniPoly{-1.0, 0.0, 1.0});
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] + 1.0) < 1e-12);
  CHECK(std::abs(r[1] - 1.0) < 1e-12);

  const auto r4 = roots_all(UniPoly{1.0, 0, 0, 0, 1.0});
  REQUIRE(r4.size() == 4);
  for (const Complex& z : r4) {
    CHECK(std::abs(std::pow(z, 4) + 1.0) < 1e-12);
    CHECK(std::abs(std::pow(z, 8) - 1.0) < 1e-12);
  }
  CHECK(hausdorff(r4, {std::polar(1.0, M_PI / 4), std::polar(1.0, 3 * M_PI / 4), std::polar(1.0, -M_PI / 4),
                       std::polar(1.0, -3 * M_PI / 4)}) < 1e-12);
}

TEST_CASE("sixty random roots are recovered") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    // Near-coincident pairs make even correctly rounded coefficients move
    // the roots by more than 1e-8, so draws keep a minimum separation.
    std::vector<Complex> roots;
    while (roots.size() < 60) {
      const Complex z = random_in_disk(rng, 1.0);
      if (std::all_of(roots.begin(), roots.end(), [&](Complex r) { return std::abs(r - z) > 0.05; }))
        roots.push_back(z);
    }
    const UniPoly p = accurate_from_roots(roots);
    const auto found = roots_all(p);
    REQUIRE(found.size() == 60);
    CHECK(hausdorff(found, roots) < 1e-8);
  }
}

TEST_CASE("re-expansion reproduces the monic input") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int deg = 1 + static_cast<int>(rng() % 40);
    std::vector<Complex> roots(static_cast<std::size_t>(deg));
    for (auto& z : roots) z = random_in_disk(rng, 2.0);
    const UniPoly p = UniPoly::from_roots(roots).scaled(random_complex(rng, 3.0) + 0.5);
    const auto found = roots_all(p);
    const UniPoly back = UniPoly::from_roots(found);
    const UniPoly target = p.monic();
    CHECK(coeff_distance(back, target) <= 1e-7 * target.max_abs_coeff());
    for (const Complex& z : found) CHECK(is_finite(z));
  }
}

TEST_CASE("residual bound is honoured") {
  std::mt19937_64 rng(5);
  std::vector<Complex> c(25);
  for (auto& z : c) z = random_complex(rng);
  const UniPoly p(c);
  const double tol = 1e-10;
  for (const Complex& r : roots_all(p, tol))
    CHECK(std::abs(p(r)) <= tol * p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(r)), p.degree()));
}

TEST_CASE("square-free part") {
  const UniPoly sq = UniPoly{-1.0, 1.0} * UniPoly{-1.0, 1.0};
  CHECK(coeff_distance(square_free_part(sq), UniPoly{-1.0, 1.0}) < 1e-8);

  const UniPoly t21{1.0, 0.0, 1.0};
  const UniPoly cube = t21 * t21 * t21;
  CHECK(coeff_distance(square_free_part(cube), t21) < 1e-8);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> roots;
    const int distinct = 2 + trial % 5;
    for (int i = 0; i < distinct; ++i) {
      const Complex z = random_in_disk(rng, 1.5);
      for (int k = 0; k <= (i + trial) % 3; ++k) roots.push_back(z);
    }
    const UniPoly p = UniPoly::from_roots(roots);
    const UniPoly s = square_free_part(p);
    CHECK(s.degree() == distinct);
    CHECK(coeff_distance(square_free_part(s), s) < 1e-8);
  }
}
