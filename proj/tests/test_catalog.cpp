#include <doctest.h>

#include <map>
#include <random>

#include "bitan/catalog.hpp"
#include "bitan/errors.hpp"

using namespace bitan;

TEST_CASE("names, ids and group data") {
  REQUIRE(curve_types().size() == 12);
  const char* gap[] = {"[168,42]", "[96,64]", "[48,33]", "[24,12]", "[16,13]", "[9,1]",
                       "[8,3]",    "[6,2]",   "[6,1]",   "[4,2]",   "[3,1]",   "[2,1]"};
  const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII"};
  const std::size_t params[] = {0, 0, 0, 1, 1, 0, 2, 1, 2, 3, 2, 4};
  for (int id = 1; id <= 12; ++id) {
    const CurveType& t = curve_type(id);
    CHECK(t.id == id);
    CHECK(t.name == names[id - 1]);
    CHECK(t.gap_id == gap[id - 1]);
    CHECK(t.param_names.size() == params[id - 1]);
    CHECK(&curve_type(t.name) == &t);
    CHECK(&curve_type(std::to_string(id)) == &t);
    CHECK(t.expected.total() == 28);
    CHECK(t.expected.group_order == t.order);
  }
  CHECK(&curve_type("viii") == &curve_type(8));
  CHECK_THROWS_AS(curve_type("XIII"), ArityMismatch);
  CHECK_THROWS_AS(curve_type(0), ArityMismatch);
}

TEST_CASE("parameter count is enforced") {
  const std::array<Complex, 2> two{1.0, 2.0};
  CHECK_THROWS_AS(instantiate(curve_type(4), two), ArityMismatch);
  CHECK_THROWS_AS(instantiate(curve_type(1), two), ArityMismatch);
  CHECK_NOTHROW(instantiate(curve_type(7), std::array<Complex, 2>{-3.0, 1.0}));
}

TEST_CASE("excluded parameters name the promoted type") {
  auto promoted = [](int id, std::vector<Complex> p) {
    try {
      instantiate(curve_type(id), p);
    } catch (const ExcludedParameter& e) {
      return e.promoted();
    }
    return std::string("accepted");
  };
  const Complex i(0.0, 1.0);
  const Complex s7 = std::sqrt(Complex(-7.0));
  CHECK(promoted(4, {0.0}) == "II");
  CHECK(promoted(4, {1.5 * (-1.0 + s7)}) == "I");
  CHECK(promoted(4, {1.5 * (-1.0 - s7)}) == "I");
  CHECK(promoted(4, {-1.0}) == "singular");
  CHECK(promoted(5, {6.0}) == "II");
  CHECK(promoted(5, {2.0 * std::sqrt(3.0) * i}) == "III");
  CHECK(promoted(7, {-3.0, 0.0}) == "V");
  CHECK(promoted(8, {0.0}) == "III");
  CHECK(promoted(9, {0.0, 1.0}) == "IV");
  CHECK(promoted(10, {1.0, -1.0, 3.0}) == "VII");
  CHECK(promoted(11, {-1.0, 3.0}) == "VIII");
  CHECK(promoted(12, {1.0, 0.0, 3.0, 5.0}) == "X");
  CHECK(promoted(12, {-2.0, 0.0, 3.0, -3.0}) == "X");  // first rule wins
  CHECK(promoted(4, {-3.0}) == "accepted");
}

TEST_CASE("advisory rules warn without rejecting") {
  // pairing 0+a = 1+b
  const Instance xi = instantiate(curve_type(11), std::array<Complex, 2>{2.5, 1.5});
  CHECK(xi.warnings.size() == 1);
  const Instance dflt = instantiate_default(curve_type(11));
  CHECK(dflt.warnings.size() == 1);
  const Instance xii = instantiate(curve_type(12), std::array<Complex, 4>{-2.0, 1.0, 0.5, 3.0});
  REQUIRE(!xii.warnings.empty());
  CHECK(xii.warnings.front().find("a = -2") != std::string::npos);
}

TEST_CASE("rule origins for the C3 family") {
  std::map<std::string, int> count, advisory;
  for (const Exclusion& e : curve_type(11).exclusions) {
    ++count[e.origin];
    advisory[e.origin] += !e.rejects;
  }
  CHECK(count["theorem"] == 3);
  CHECK(count["section"] == 3);
  CHECK(count["derived"] == 4);
  CHECK(advisory["derived"] == 2);
  CHECK(advisory["theorem"] == 0);
}

TEST_CASE("the linearized C3 family agrees with the product form") {
  const CurveType& t = curve_type(11);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
    const std::array<Complex, 2> p{a, b};
    for (int j = 0; j < 5; ++j) {
      const Vec3 x{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
      const Complex want = x[0] * (x[0] - x[1]) * (x[0] - a * x[1]) * (x[0] - b * x[1]) + x[1] * std::pow(x[2], 3);
      const TernaryQuartic g(t.equation(p));
      // equation() may be rescaled; compare ratios at two points
      const Vec3 y{1.0, 0.5, 0.25};
      const Complex wy = (1.0 - 0.5) * (1.0 - a * 0.5) * (1.0 - b * 0.5) + 0.5 * std::pow(0.25, 3);
      CHECK(std::abs(g(x) * wy - want * g(y)) < 1e-10 * (1.0 + std::abs(want * g(y))));
    }
  }
}

TEST_CASE("pictured examples are invariant and admissible") {
  for (const CurveType& t : curve_types()) {
    CAPTURE(t.name);
    REQUIRE(!t.figures.empty());
    for (const FigureExample& fig : t.figures) {
      const QuarticCoeffs c = fig.literal ? *fig.literal : t.equation(fig.params);
      const TernaryQuartic f(c);
      if (t.name != "III") CHECK(f.has_real_coefficients());
      for (const Eigen::Matrix3cd& m : t.generators)
        CHECK(act_on_quartic(ProjTransform(m), f).distance(f) < 1e-10);
      if (!fig.literal) CHECK_NOTHROW(instantiate(t, fig.params));
    }
  }
}

TEST_CASE("singular loci really are singular") {
  // Type IV at a = -1: the point (1,1,1)
  const TernaryQuartic iv(curve_type(4).equation(std::array<Complex, 1>{-1.0}));
  const Vec3 p{1.0, 1.0, 1.0};
  CHECK(std::abs(iv(p)) < 1e-12);
  for (Complex g : iv.gradient(p)) CHECK(std::abs(g) < 1e-12);
  // Type VIII at a = 2: the point (i,1,0)
  const TernaryQuartic viii(curve_type(8).equation(std::array<Complex, 1>{2.0}));
  const Vec3 q{Complex(0.0, 1.0), 1.0, 0.0};
  CHECK(std::abs(viii(q)) < 1e-12);
  for (Complex g : viii.gradient(q)) CHECK(std::abs(g) < 1e-12);
  CHECK_THROWS_AS(instantiate(curve_type(8), std::array<Complex, 1>{2.0}), ExcludedParameter);
  CHECK_THROWS_AS(instantiate(curve_type(4), std::array<Complex, 1>{-1.0}), ExcludedParameter);
}

TEST_CASE("random parameters stay away from every locus") {
  std::mt19937_64 rng(17);
  for (const CurveType& t : curve_types()) {
    if (t.param_names.empty()) continue;
    for (const auto& p : random_valid_params(t, 5, rng)) {
      CHECK(p.size() == t.param_names.size());
      CHECK(exclusion_hits(t, p, 1e-2).empty());
      CHECK_NOTHROW(instantiate(t, p));
    }
  }
}

TEST_CASE("verification is deterministic") {
  const Verification a = verify_type(curve_type(7));
  const Verification b = verify_type(curve_type(7));
  REQUIRE(a.bitangents.items.size() == 28);
  for (std::size_t i = 0; i < 28; ++i) CHECK(a.bitangents.items[i].line.distance(b.bitangents.items[i].line) == 0.0);
  CHECK(a.report.computed == b.report.computed);
  CHECK(a.report.to_json() == b.report.to_json());
}

TEST_CASE("decomposition does not depend on the parameters") {
  for (int id : {10, 12}) {
    CAPTURE(id);
    std::mt19937_64 rng(static_cast<std::uint64_t>(100 + id));
    const auto samples = random_valid_params(curve_type(id), 3, rng);
    const IndependenceResult r = independence_check(curve_type(id), samples);
    CHECK(r.equal);
    CHECK(r.decompositions.size() == 3);
  }
}

TEST_CASE("catalog rows") {
  const nlohmann::json row = catalog_row(curve_type(9));
  CHECK(row["type"] == "IX");
  CHECK(row["group"] == "S3");
  CHECK(row["order"] == 6);
  CHECK(row["gapId"] == "[6,1]");
  CHECK(row["paramNames"] == nlohmann::json::array({"a", "b"}));
  CHECK(row["expectedDecomposition"] == "3[S3/e] + 3[S3/C2] + [S3/S3]");
  CHECK(row.contains("defaults"));
}
