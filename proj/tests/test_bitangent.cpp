#include <doctest.h>

#include <algorithm>
#include <random>

#include "bitan/bitangent.hpp"
#include "bitan/errors.hpp"
#include "test_util.hpp"

using namespace bitan;

namespace {

QuarticCoeffs terms(std::initializer_list<std::pair<std::array<int, 3>, Complex>> t) {
  QuarticCoeffs c{};
  for (const auto& [e, v] : t) c[quartic_monomial_index(e[0], e[1], e[2])] += v;
  return c;
}

TernaryQuartic fermat() { return TernaryQuartic(terms({{{4, 0, 0}, 1.0}, {{0, 4, 0}, 1.0}, {{0, 0, 4}, 1.0}})); }
TernaryQuartic klein() { return TernaryQuartic(terms({{{3, 1, 0}, 1.0}, {{0, 3, 1}, 1.0}, {{1, 0, 3}, 1.0}})); }
TernaryQuartic symmetric_quartic(double a) {
  return TernaryQuartic(terms({{{4, 0, 0}, 1.0},
                               {{0, 4, 0}, 1.0},
                               {{0, 0, 4}, 1.0},
                               {{2, 2, 0}, a},
                               {{0, 2, 2}, a},
                               {{2, 0, 2}, a}}));
}

// Squared-product test: f|_L = alpha q^2 iff the four roots of f|_L pair up.
// Roots are taken in a unit-norm parametrization independent of the solver.
double pairing_defect(const TernaryQuartic& f, const ProjLine& line) {
  const auto par = LineParametrization::for_line(line);
  const auto r = restrict_to_line(f, par).c;
  double scale = 0.0;
  for (const auto& z : r) scale = std::max(scale, std::abs(z));
  std::vector<Complex> coeffs(r.begin(), r.end());
  const bool flip = std::abs(r[4]) < std::abs(r[0]);
  if (flip) std::reverse(coeffs.begin(), coeffs.end());
  const auto roots = roots_all(UniPoly(coeffs), 1e-6);
  std::vector<Complex> rr = roots;
  while (rr.size() < 4) rr.push_back(Complex(1e300));
  auto chord = [](Complex a, Complex b) {
    if (std::abs(a) > 1e200 || std::abs(b) > 1e200) return std::abs(a) > 1e200 && std::abs(b) > 1e200 ? 0.0 : 1.0;
    return std::abs(a - b) / std::sqrt((1 + std::norm(a)) * (1 + std::norm(b)));
  };
  double best = 1e300;
  for (auto p : {std::array<int, 4>{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}})
    best = std::min(best, std::max(chord(rr[p[0]], rr[p[1]]), chord(rr[p[2]], rr[p[3]])));
  return best;
}

void check_sound(const TernaryQuartic& f, const BitangentSet& s) {
  REQUIRE(s.items.size() == 28);
  for (std::size_t a = 0; a < s.items.size(); ++a) {
    const Bitangent& b = s.items[a];
    CHECK(b.residual <= 1e-8);
    // a root of multiplicity m is only resolved to about eps^(1/m)
    CHECK(pairing_defect(f, b.line) < (b.is_hyperflex ? 1e-3 : 1e-5));
    for (const ProjPoint& p : b.tangency_points) {
      const Vec3& x = p.coords();
      CHECK(std::abs(b.line.incidence(x)) < 1e-7);
      CHECK(std::abs(f(x)) < 1e-7);
      // the tangent line at p is the bitangent itself
      const Vec3 g = f.gradient(x);
      CHECK(projective_distance(b.line.coords(), g) < 1e-5);
    }
    for (std::size_t c = a + 1; c < s.items.size(); ++c) CHECK(s.items[a].line.distance(s.items[c].line) > 1e-6);
  }
}

}  // namespace

TEST_CASE("perfect-square conditions on squares and non-squares") {
  std::mt19937_64 rng(11);
  int squares_ok = 0, others_ok = 0;
  for (int n = 0; n < 1000; ++n) {
    const Complex alpha = testutil::random_complex(rng) + 1.5;
    const Complex q0 = testutil::random_complex(rng), q1 = testutil::random_complex(rng);
    // alpha (t^2 + q1 t + q0)^2
    BinaryQuartic c{{alpha * q0 * q0, alpha * 2.0 * q0 * q1, alpha * (q1 * q1 + 2.0 * q0), alpha * 2.0 * q1, alpha}};
    double scale = 0.0;
    for (const auto& z : c.c) scale = std::max(scale, std::abs(z));
    const auto [g1, g2] = perfect_square_conditions(c);
    if (std::abs(g1) < 1e-9 * std::pow(scale, 3) && std::abs(g2) < 1e-9 * std::pow(scale, 4)) ++squares_ok;

    BinaryQuartic r;
    for (auto& z : r.c) z = testutil::random_complex(rng);
    r.c[4] += 1.5;
    double rs = 0.0;
    for (const auto& z : r.c) rs = std::max(rs, std::abs(z));
    const auto [h1, h2] = perfect_square_conditions(r);
    if (std::abs(h1) > 1e-3 * std::pow(rs, 3) || std::abs(h2) > 1e-3 * std::pow(rs, 4)) ++others_ok;
  }
  CHECK(squares_ok == 1000);
  CHECK(others_ok == 1000);
}

TEST_CASE("perfect-square conditions of t^4 + 1") {
  const auto [g1, g2] = perfect_square_conditions(BinaryQuartic{{1.0, 0.0, 0.0, 0.0, 1.0}});
  CHECK(std::abs(g1) < 1e-15);
  CHECK(std::abs(g2 - Complex(-64.0)) < 1e-12);
}

TEST_CASE("chart restriction agrees with restrict_to_line") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 20; ++n) {
    const TernaryQuartic f(testutil::random_quartic(rng));
    for (int k = 0; k < 3; ++k) {
      const auto c = chart_restriction(f, k);
      const Complex u = testutil::random_complex(rng), v = testutil::random_complex(rng);
      Vec3 l{};
      int free_idx[2], at = 0;
      for (int r = 0; r < 3; ++r)
        if (r != k) free_idx[at++] = r;
      l[static_cast<std::size_t>(free_idx[0])] = u;
      l[static_cast<std::size_t>(free_idx[1])] = v;
      l[static_cast<std::size_t>(k)] = 1.0;
      const ProjLine line(l);
      // chart parametrization of the canonical line in the same chart
      const auto direct = restrict_to_line(f, LineParametrization::chart(line, k)).c;
      for (std::size_t m = 0; m < 5; ++m) CHECK(std::abs(c[m](u, v) - direct[m]) < 1e-9 * (1.0 + std::abs(direct[m])));
    }
  }
}

TEST_CASE("Fermat quartic: 28 bitangents, the four real ones and 12 hyperflexes") {
  const TernaryQuartic f = fermat();
  const BitangentSet s = solve_all(f);
  check_sound(f, s);
  CHECK(count_real(s) == 4);
  CHECK(s.diagnostics.hyperflexes == 12);
  for (Complex b : {Complex(1.0), Complex(-1.0)})
    for (Complex c : {Complex(1.0), Complex(-1.0)}) CHECK(s.find(ProjLine({1.0, b, c})) < s.items.size());
}

TEST_CASE("Klein quartic: 28 bitangents, 4 real") {
  const TernaryQuartic f = klein();
  const BitangentSet s = solve_all(f);
  check_sound(f, s);
  CHECK(count_real(s) == 4);
}

TEST_CASE("symmetric quartic with a = -3 has 16 real bitangents") {
  const TernaryQuartic f = symmetric_quartic(-3.0);
  const BitangentSet s = solve_all(f);
  check_sound(f, s);
  CHECK(count_real(s) == 16);
}

TEST_CASE("random quartics are solved soundly") {
  std::mt19937_64 rng(77);
  for (int n = 0; n < 10; ++n) {
    const TernaryQuartic f(testutil::random_quartic(rng));
    check_sound(f, solve_all(f));
  }
}

TEST_CASE("polish refines a perturbed bitangent and rejects a random line") {
  const TernaryQuartic f = klein();
  const BitangentSet s = solve_all(f);
  std::mt19937_64 rng(3);
  for (const Bitangent& b : s.items) {
    Vec3 l = b.line.coords();
    for (auto& z : l) z += testutil::random_complex(rng, 1e-4);
    const Bitangent p = polish(f, ProjLine(l));
    CHECK(p.line.distance(b.line) < 1e-9);
  }
  // a random start is far from every bitangent; anything accepted must be one
  int rejected = 0;
  for (int n = 0; n < 100; ++n) {
    try {
      const Bitangent p = polish(f, ProjLine(testutil::random_vec3(rng)));
      CHECK(s.find(p.line) < s.items.size());
    } catch (const NonConvergence&) {
      ++rejected;
    }
  }
  MESSAGE("random lines rejected: " << rejected);
  CHECK(rejected >= 90);
}

TEST_CASE("hyperflex lines of the Fermat quartic") {
  const TernaryQuartic f = fermat();
  // x = e y with e^4 = -1 meets the curve only where z^4 = 0
  const Complex e = std::polar(1.0, std::numbers::pi / 4);
  const Bitangent b = polish(f, ProjLine({1.0, -e, 0.0}));
  CHECK(b.is_hyperflex);
  CHECK(std::abs(b.tangency_points[0].coords()[2]) < 1e-6);
  CHECK(projective_distance(b.tangency_points[0].coords(), b.tangency_points[1].coords()) < 1e-6);
  const Bitangent r = polish(f, ProjLine({1.0, 1.0, 1.0}));
  CHECK(!r.is_hyperflex);
  CHECK(r.is_real);
}

TEST_CASE("bitangents transform with the quartic") {
  std::mt19937_64 rng(21);
  const TernaryQuartic f = klein();
  const BitangentSet s = solve_all(f);
  for (int n = 0; n < 3; ++n) {
    const ProjTransform g(testutil::random_matrix(rng) + Eigen::Matrix3cd::Identity() * 2.0);
    const TernaryQuartic gf = act_on_quartic(g, f);
    const BitangentSet t = solve_all(gf);
    for (const Bitangent& b : s.items) CHECK(t.find(act_on_line(g, b.line), 1e-5) < t.items.size());
  }
}

TEST_CASE("result does not depend on the charts or the seed") {
  const TernaryQuartic f = symmetric_quartic(-3.0);
  const BitangentSet all = solve_all(f);
  for (int k = 0; k < 3; ++k) {
    SolverConfig cfg;
    cfg.charts = {k == 0, k == 1, k == 2};
    cfg.seed = 1000 + static_cast<std::uint64_t>(k);
    const BitangentSet one = solve_all(f, cfg);
    REQUIRE(one.items.size() == 28);
    for (std::size_t n = 0; n < 28; ++n) CHECK(one.items[n].line.distance(all.items[n].line) < 1e-9);
  }
}

TEST_CASE("singular quartics are refused") {
  // x^4 + y^4 + z^4 - 2 (x^2 y^2 + ...) factors into conics
  const TernaryQuartic f = symmetric_quartic(-2.0);
  CHECK_THROWS_AS(solve_all(f), Error);
}
