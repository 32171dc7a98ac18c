#include "bitan/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <mutex>
#include <numbers>

#include "bitan/errors.hpp"

namespace bitan {

namespace {

const Complex kI(0.0, 1.0);

Complex zeta(int n, int k = 1) { return std::polar(1.0, 2.0 * std::numbers::pi * k / n); }

using Terms = std::initializer_list<std::pair<std::array<int, 3>, Complex>>;

QuarticCoeffs poly(Terms t) {
  QuarticCoeffs c{};
  for (const auto& [e, v] : t) c[quartic_monomial_index(e[0], e[1], e[2])] += v;
  return c;
}

Eigen::Matrix3cd mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Eigen::Matrix3cd m;
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (const Complex& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Eigen::Matrix3cd diag(Complex a, Complex b, Complex c) { return Eigen::Vector3cd(a, b, c).asDiagonal(); }

const QuarticCoeffs kFermat = poly({{{4, 0, 0}, 1.0}, {{0, 4, 0}, 1.0}, {{0, 0, 4}, 1.0}});

ExpectedTerm term(std::string name, std::size_t mult, IsoLabel::Kind kind, std::size_t order, bool abelian = true,
                  std::optional<bool> central = std::nullopt, std::optional<std::size_t> gen_class = std::nullopt) {
  return ExpectedTerm{std::move(name), mult, order, IsoLabel{kind, order, abelian}, central, gen_class};
}
ExpectedTerm trivial(std::size_t mult) { return term("e", mult, IsoLabel::Kind::cyclic, 1); }
ExpectedTerm cyclic(std::string name, std::size_t mult, std::size_t order, std::optional<bool> central = std::nullopt,
                    std::optional<std::size_t> gen_class = std::nullopt) {
  return term(std::move(name), mult, IsoLabel::Kind::cyclic, order, true, central, gen_class);
}

using Params = std::span<const Complex>;

Exclusion rule(std::string text, std::string promoted, std::string origin,
               std::function<double(Params)> distance, bool rejects = true) {
  return Exclusion{std::move(text), std::move(promoted), std::move(origin), rejects, std::move(distance)};
}

Exclusion at_value(std::size_t idx, Complex v, std::string text, std::string promoted, std::string origin,
                   bool rejects = true) {
  return rule(std::move(text), std::move(promoted), std::move(origin),
              [idx, v](Params p) { return std::abs(p[idx] - v); }, rejects);
}

std::vector<Complex> identity_params(Params p) { return {p.begin(), p.end()}; }

// Equilateral triangle test: p^2 + q^2 + r^2 - pq - qr - rp = 0.
double centroid_defect(Complex c, Complex p, Complex q, Complex r) {
  const double scale = 1.0 + std::norm(p) + std::norm(q) + std::norm(r);
  const double eq = std::abs(p * p + q * q + r * r - p * q - q * r - r * p) / scale;
  return std::max(eq, std::abs(c - (p + q + r) / 3.0));
}

std::vector<CurveType> build() {
  std::vector<CurveType> out;
  auto add = [&](CurveType t) {
    t.id = static_cast<int>(out.size()) + 1;
    if (!t.linearize) t.linearize = identity_params;
    if (t.family.params.empty()) t.family.params = t.param_names;
    out.push_back(std::move(t));
  };
  const Complex z3 = zeta(3), z7 = zeta(7), z9 = zeta(9);

  {
    CurveType t;
    t.name = "I";
    t.group_name = "PSL2(7)";
    t.gap_id = "[168,42]";
    t.order = 168;
    t.family.constant = poly({{{3, 1, 0}, 1.0}, {{0, 3, 1}, 1.0}, {{1, 0, 3}, 1.0}});
    const Complex s = kI * std::sqrt(7.0);
    const Complex al = (std::pow(z7, 5) - std::pow(z7, 2)) / s;
    const Complex be = (std::pow(z7, 6) - z7) / s;
    const Complex ga = (std::pow(z7, 3) - std::pow(z7, 4)) / s;
    t.generators = {diag(std::pow(z7, 4), std::pow(z7, 2), z7), mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}),
                    mat({{al, ga, be}, {ga, be, al}, {be, al, ga}})};
    t.expected = {"PSL2(7)", 168, {term("S3", 1, IsoLabel::Kind::symmetric3, 6, false)}};
    t.figures = {{{}, 4, std::nullopt}};
    t.note = "third generator stored as the symmetric arrangement of alpha, beta, gamma";
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "II";
    t.group_name = "C4^2:S3";
    t.gap_id = "[96,64]";
    t.order = 96;
    t.family.constant = kFermat;
    t.generators = {mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}), mat({{-kI, 0, 0}, {0, 0, 1}, {0, kI, 0}})};
    t.expected = {"C4^2:S3", 96, {cyclic("C6", 1, 6), cyclic("C8", 1, 8)}};
    t.figures = {{{}, 4, std::nullopt}};
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "III";
    t.group_name = "C4oA4";
    t.gap_id = "[48,33]";
    t.order = 48;
    t.family.constant = kFermat;
    t.family.constant[quartic_monomial_index(2, 2, 0)] = 4.0 * z3 + 2.0;
    const Complex p = (1.0 + kI) / 2.0, m = (-1.0 + kI) / 2.0;
    // transposes of the printed matrices
    t.generators = {mat({{p, p, 0}, {m, std::conj(p), 0}, {0, 0, z3}}),
                    mat({{p, m, 0}, {-p, m, 0}, {0, 0, z3 * z3}})};
    t.expected = {"C4oA4", 48, {cyclic("C2", 1, 2), cyclic("C12", 1, 12)}};
    t.figures = {{{}, 0, std::nullopt}};
    t.note = "generators stored transposed; the printed matrices act on row vectors";
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "IV";
    t.group_name = "S4";
    t.gap_id = "[24,12]";
    t.order = 24;
    t.param_names = {"a"};
    t.family.constant = kFermat;
    t.family.linear = {poly({{{2, 2, 0}, 1.0}, {{0, 2, 2}, 1.0}, {{2, 0, 2}, 1.0}})};
    t.generators = {mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}), mat({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}})};
    t.expected = {"S4",
                  24,
                  {cyclic("C2^o", 1, 2, std::nullopt, 6), cyclic("C2^e", 1, 2, std::nullopt, 3),
                   term("S3", 1, IsoLabel::Kind::symmetric3, 6, false)}};
    const Complex r7 = std::sqrt(Complex(-7.0));
    t.exclusions = {at_value(0, 0.0, "a = 0", "II", "theorem"),
                    at_value(0, 1.5 * (-1.0 + r7), "a = 3/2 (-1 + sqrt(-7))", "I", "theorem"),
                    at_value(0, 1.5 * (-1.0 - r7), "a = 3/2 (-1 - sqrt(-7))", "I", "theorem"),
                    at_value(0, -1.0, "a = -1", "singular", "derived"),
                    at_value(0, 2.0, "a = 2", "singular", "derived"),
                    at_value(0, -2.0, "a = -2", "singular", "derived")};
    t.figures = {{{-3.0}, 16, std::nullopt}, {{-34.0 / 25.0}, 0, std::nullopt}};
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "V";
    t.group_name = "P";
    t.gap_id = "[16,13]";
    t.order = 16;
    t.param_names = {"a"};
    t.family.constant = kFermat;
    t.family.linear = {poly({{{2, 2, 0}, 1.0}})};
    t.generators = {diag(-1, 1, 1), diag(kI, -kI, 1), mat({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}})};
    t.expected = {"P",
                  16,
                  {cyclic("C2(1)", 1, 2, false), cyclic("C2(2)", 1, 2, false), cyclic("C2(3)", 1, 2, false),
                   cyclic("C4^Z", 1, 4, true)}};
    const Complex r = 2.0 * std::sqrt(Complex(-3.0));
    t.exclusions = {at_value(0, 0.0, "a = 0", "II", "theorem"),
                    at_value(0, 6.0, "a = 6", "II", "theorem"),
                    at_value(0, -6.0, "a = -6", "II", "theorem"),
                    at_value(0, r, "a = 2 sqrt(-3)", "III", "theorem"),
                    at_value(0, -r, "a = -2 sqrt(-3)", "III", "theorem"),
                    at_value(0, 2.0, "a = 2", "singular", "derived"),
                    at_value(0, -2.0, "a = -2", "singular", "derived")};
    t.figures = {{{-4.0}, 8, std::nullopt}};
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "VI";
    t.group_name = "C9";
    t.gap_id = "[9,1]";
    t.order = 9;
    t.family.constant = poly({{{4, 0, 0}, 1.0}, {{1, 3, 0}, 1.0}, {{0, 1, 3}, 1.0}});
    t.generators = {diag(z3, 1, z9)};
    t.expected = {"C9", 9, {trivial(3), cyclic("C9", 1, 9)}};
    t.figures = {{{}, 4, std::nullopt}};
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "VII";
    t.group_name = "D8";
    t.gap_id = "[8,3]";
    t.order = 8;
    t.param_names = {"a", "b"};
    t.family.constant = kFermat;
    t.family.linear = {poly({{{2, 2, 0}, 1.0}}), poly({{{1, 1, 2}, 1.0}})};
    t.generators = {diag(kI, -kI, 1), mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})};
    t.expected = {"D8",
                  8,
                  {trivial(1), cyclic("C2(1)", 2, 2, false), cyclic("C2(2)", 2, 2, false),
                   cyclic("C2^Z", 1, 2, true)}};
    t.exclusions = {
        at_value(1, 0.0, "b = 0", "V", "theorem"),
        at_value(0, 2.0, "a = 2", "singular", "derived"),
        at_value(0, -2.0, "a = -2", "singular", "derived"),
        rule("4a - b^2 = 8", "singular", "derived", [](Params p) { return std::abs(4.0 * p[0] - p[1] * p[1] - 8.0); }),
        rule("4a - b^2 = -8", "singular", "derived", [](Params p) { return std::abs(4.0 * p[0] - p[1] * p[1] + 8.0); })};
    t.figures = {{{-3.0, 1.0}, 8, std::nullopt}};
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "VIII";
    t.group_name = "C6";
    t.gap_id = "[6,2]";
    t.order = 6;
    t.param_names = {"a"};
    t.family.constant = poly({{{0, 1, 3}, 1.0}, {{4, 0, 0}, 1.0}, {{0, 4, 0}, 1.0}});
    t.family.linear = {poly({{{2, 2, 0}, 1.0}})};
    t.generators = {diag(-1, 1, z3)};
    t.expected = {"C6", 6, {trivial(4), cyclic("C2", 1, 2), cyclic("C6", 1, 6)}};
    t.exclusions = {at_value(0, 0.0, "a = 0", "III", "theorem"), at_value(0, 2.0, "a = 2", "singular", "derived"),
                    at_value(0, -2.0, "a = -2", "singular", "derived")};
    t.figures = {{{-3.0}, 4, std::nullopt}};
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "IX";
    t.group_name = "S3";
    t.gap_id = "[6,1]";
    t.order = 6;
    t.param_names = {"a", "b"};
    t.family.constant = poly({{{3, 0, 1}, 1.0}, {{0, 3, 1}, 1.0}, {{2, 2, 0}, 1.0}});
    t.family.linear = {poly({{{1, 1, 2}, 1.0}}), poly({{{0, 0, 4}, 1.0}})};
    t.generators = {diag(z3, z3 * z3, 1), mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})};
    t.expected = {"S3", 6, {trivial(3), cyclic("C2", 3, 2), term("S3", 1, IsoLabel::Kind::symmetric3, 6, false)}};
    t.exclusions = {
        at_value(0, 0.0, "a = 0", "IV", "theorem"),
        // Image of the Type IV pencil with parameter A in this normal form:
        // a = 9(A+2)/(2-A)^2, b = 27/16 (A+1)(A+2)^3/(2-A)^4.
        rule("a = 9(A+2)/(2-A)^2, b = 27(A+1)(A+2)^3/(16(2-A)^4)", "IV", "derived",
             [](Params p) {
               const Complex a = p[0], b = p[1];
               // a A^2 - (4a + 9) A + (4a - 18) = 0
               std::vector<Complex> roots;
               if (std::abs(a) < 1e-12) {
                 roots.push_back((4.0 * a - 18.0) / (4.0 * a + 9.0));
               } else {
                 const Complex disc = std::sqrt((4.0 * a + 9.0) * (4.0 * a + 9.0) - 4.0 * a * (4.0 * a - 18.0));
                 roots.push_back(((4.0 * a + 9.0) + disc) / (2.0 * a));
                 roots.push_back(((4.0 * a + 9.0) - disc) / (2.0 * a));
               }
               double best = 1e300;
               for (Complex big_a : roots) {
                 const Complex d = 2.0 - big_a;
                 if (std::abs(d) < 1e-12) continue;
                 const Complex bb = 27.0 / 16.0 * (big_a + 1.0) * std::pow(big_a + 2.0, 3) / std::pow(d, 4);
                 best = std::min(best, std::abs(b - bb));
               }
               return best;
             },
             false),
        at_value(1, 0.0, "b = 0", "singular", "derived"),
        rule("a^4 - a^3 - 8a^2 b + 36ab + 16b^2 - 27b = 0", "singular", "derived", [](Params p) {
          const Complex a = p[0], b = p[1];
          return std::abs(std::pow(a, 4) - std::pow(a, 3) - 8.0 * a * a * b + 36.0 * a * b + 16.0 * b * b - 27.0 * b);
        })};
    t.figures = {{{-25.0, 10.0}, 8, std::nullopt}};
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "X";
    t.group_name = "K4";
    t.gap_id = "[4,2]";
    t.order = 4;
    t.param_names = {"a", "b", "c"};
    t.family.constant = kFermat;
    t.family.linear = {poly({{{2, 2, 0}, 1.0}}), poly({{{0, 2, 2}, 1.0}}), poly({{{2, 0, 2}, 1.0}})};
    t.generators = {diag(-1, 1, 1), diag(1, -1, 1)};
    t.expected = {"K4", 4, {trivial(5), cyclic("C2^L", 2, 2), cyclic("C2^R", 2, 2)}};
    t.exclusions = {rule("{+-a, +-b, +-c} not distinct", "VII", "theorem",
                         [](Params p) {
                           double d = 1e300;
                           for (std::size_t i = 0; i < 3; ++i) {
                             d = std::min(d, std::abs(p[i]));
                             for (std::size_t j = i + 1; j < 3; ++j)
                               d = std::min({d, std::abs(p[i] - p[j]), std::abs(p[i] + p[j])});
                           }
                           return d;
                         }),
                    rule("a, b or c = +-2", "singular", "derived",
                         [](Params p) {
                           double d = 1e300;
                           for (std::size_t i = 0; i < 3; ++i)
                             d = std::min({d, std::abs(p[i] - 2.0), std::abs(p[i] + 2.0)});
                           return d;
                         }),
                    rule("a^2 + b^2 + c^2 - abc - 4 = 0", "singular", "derived", [](Params p) {
                      return std::abs(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - p[0] * p[1] * p[2] - 4.0);
                    })};
    t.figures = {{{-9.0, -3.0, -8.0}, 16, std::nullopt}};
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "XI";
    t.group_name = "C3";
    t.gap_id = "[3,1]";
    t.order = 3;
    t.param_names = {"a", "b"};
    // x(x-y)(x-ay)(x-by) + yz^3 with s = a+b, p = ab
    t.family.params = {"s", "p"};
    t.family.constant = poly({{{4, 0, 0}, 1.0}, {{3, 1, 0}, -1.0}, {{0, 1, 3}, 1.0}});
    t.family.linear = {poly({{{3, 1, 0}, -1.0}, {{2, 2, 0}, 1.0}}), poly({{{2, 2, 0}, 1.0}, {{1, 3, 0}, -1.0}})};
    t.linearize = [](Params p) { return std::vector<Complex>{p[0] + p[1], p[0] * p[1]}; };
    t.generators = {diag(1, 1, z3)};
    t.expected = {"C3", 3, {trivial(9), cyclic("C3", 1, 3)}};
    auto either = [](Complex v) {
      return [v](Params p) { return std::min(std::abs(p[0] - v), std::abs(p[1] - v)); };
    };
    const Complex z32 = z3 * z3;
    t.exclusions = {
        rule("a or b = zeta3", "VI", "theorem", either(z3)),
        rule("a or b = zeta3^2", "VI", "theorem", either(z32)),
        rule("a or b = -1", "VIII", "theorem", either(-1.0)),
        at_value(0, 1.0, "a = 1", "singular", "section"),
        rule("b = 1 - a", "VIII", "section", [](Params p) { return std::abs(p[0] + p[1] - 1.0); }),
        rule("(x-a)(x-b) = x^2 + x + 1", "VI", "section",
             [](Params p) { return std::abs(p[0] + p[1] + 1.0) + std::abs(p[0] * p[1] - 1.0); }),
        // The roots 0, 1, a, b of the quartic part decide the extra symmetry.
        rule("roots 0, 1, a, b split into two pairs with equal sums", "VIII", "derived",
             [](Params p) {
               return std::min({std::abs(p[0] + p[1] - 1.0), std::abs(p[0] - p[1] - 1.0), std::abs(p[1] - p[0] - 1.0)});
             },
             false),
        rule("one of 0, 1, a, b is the center of an equilateral triangle on the others", "VI", "derived",
             [](Params p) {
               const std::array<Complex, 4> r{0.0, 1.0, p[0], p[1]};
               double d = 1e300;
               for (int c = 0; c < 4; ++c) {
                 std::array<Complex, 3> o;
                 int k = 0;
                 for (int j = 0; j < 4; ++j)
                   if (j != c) o[static_cast<std::size_t>(k++)] = r[static_cast<std::size_t>(j)];
                 d = std::min(d, centroid_defect(r[static_cast<std::size_t>(c)], o[0], o[1], o[2]));
               }
               return d;
             },
             false),
        rule("a or b in {0, 1}", "singular", "derived",
             [](Params p) {
               return std::min({std::abs(p[0]), std::abs(p[1]), std::abs(p[0] - 1.0), std::abs(p[1] - 1.0)});
             }),
        rule("a = b", "singular", "derived", [](Params p) { return std::abs(p[0] - p[1]); })};
    t.figures = {{{2.0, 3.0}, 4, std::nullopt}};
    add(std::move(t));
  }
  {
    CurveType t;
    t.name = "XII";
    t.group_name = "C2";
    t.gap_id = "[2,1]";
    t.order = 2;
    t.param_names = {"a", "b", "c", "d"};
    t.family.constant = kFermat;
    t.family.linear = {poly({{{2, 2, 0}, 1.0}}), poly({{{2, 1, 1}, 1.0}}), poly({{{2, 0, 2}, 1.0}}),
                       poly({{{0, 2, 2}, 1.0}})};
    t.generators = {diag(-1, 1, 1)};
    t.expected = {"C2", 2, {trivial(12), cyclic("C2", 4, 2)}};
    t.exclusions = {
        at_value(1, 0.0, "b = 0", "X", "theorem"),
        rule("a = -2, b = 0, c = -d", "IX", "theorem",
             [](Params p) { return std::max({std::abs(p[0] + 2.0), std::abs(p[1]), std::abs(p[2] + p[3])}); }),
        at_value(0, -2.0, "a = -2", "IX", "section", false),
        rule("c = -d", "IX", "section", [](Params p) { return std::abs(p[2] + p[3]); }, false),
        at_value(3, 2.0, "d = 2", "singular", "derived"),
        at_value(3, -2.0, "d = -2", "singular", "derived")};
    t.figures = {{{}, 4,
                  poly({{{4, 0, 0}, 1.0},
                        {{2, 2, 0}, -1.0},
                        {{2, 0, 2}, -4.0},
                        {{0, 4, 0}, 1.0},
                        {{0, 2, 2}, -1.0},
                        {{0, 0, 4}, -1.0}})}};
    t.note = "pictured example stored as printed; it is not in the normal form";
    add(std::move(t));
  }
  return out;
}

std::string upper(std::string_view s) {
  std::string u(s);
  for (char& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return u;
}

}  // namespace

QuarticCoeffs ParametricQuartic::at(std::span<const Complex> p) const {
  if (p.size() != linear.size())
    throw ArityMismatch("family takes " + std::to_string(linear.size()) + " parameters, got " +
                        std::to_string(p.size()));
  QuarticCoeffs c = constant;
  for (std::size_t i = 0; i < linear.size(); ++i)
    for (std::size_t m = 0; m < c.size(); ++m) c[m] += p[i] * linear[i][m];
  return c;
}

ParametricQuartic ParametricQuartic::substituted(const Eigen::Matrix3cd& m) const {
  ParametricQuartic r;
  r.params = params;
  r.constant = substitute(constant, m);
  for (const auto& l : linear) r.linear.push_back(substitute(l, m));
  return r;
}

QuarticCoeffs CurveType::equation(std::span<const Complex> params) const {
  if (params.size() != param_names.size())
    throw ArityMismatch("type " + name + " takes " + std::to_string(param_names.size()) + " parameters, got " +
                        std::to_string(params.size()));
  const auto lin = linearize(params);
  return family.at(lin);
}

const std::vector<CurveType>& curve_types() {
  static const std::vector<CurveType> types = build();
  return types;
}

const CurveType& curve_type(int id) {
  if (id < 1 || id > 12) throw ArityMismatch("unknown type " + std::to_string(id));
  return curve_types()[static_cast<std::size_t>(id - 1)];
}

const CurveType& curve_type(std::string_view name) {
  const std::string u = upper(name);
  for (const auto& t : curve_types())
    if (t.name == u || std::to_string(t.id) == u) return t;
  throw ArityMismatch("unknown type " + std::string(name));
}

const FiniteProjGroup& type_group(int id) {
  static std::array<std::once_flag, 12> flags;
  static std::array<std::optional<FiniteProjGroup>, 12> groups;
  const CurveType& t = curve_type(id);
  const auto k = static_cast<std::size_t>(id - 1);
  std::call_once(flags[k], [&] {
    std::vector<ProjTransform> gens;
    for (const auto& m : t.generators) gens.emplace_back(m);
    groups[k] = FiniteProjGroup::closure(gens);
  });
  return *groups[k];
}

std::vector<ExclusionHit> exclusion_hits(const CurveType& t, std::span<const Complex> params, double tol) {
  std::vector<ExclusionHit> hits;
  for (const auto& e : t.exclusions) {
    const double d = e.distance(params);
    if (d <= tol) hits.push_back({&e, d});
  }
  return hits;
}

Instance instantiate(const CurveType& t, std::span<const Complex> params) {
  if (params.size() != t.param_names.size())
    throw ArityMismatch("type " + t.name + " takes " + std::to_string(t.param_names.size()) + " parameters, got " +
                        std::to_string(params.size()));
  Instance inst;
  for (const auto& h : exclusion_hits(t, params)) {
    if (h.rule->rejects) throw ExcludedParameter(h.rule->promoted, h.rule->rule + " [" + h.rule->origin + "]");
    inst.warnings.push_back(h.rule->rule + " [" + h.rule->origin + "] suggests " + h.rule->promoted);
  }
  inst.type = &t;
  inst.params.assign(params.begin(), params.end());
  inst.quartic = TernaryQuartic(t.equation(params));
  inst.group = &type_group(t.id);
  return inst;
}

Instance instantiate_default(const CurveType& t) {
  const FigureExample& fig = t.figures.front();
  if (!fig.literal) return instantiate(t, fig.params);
  Instance inst;
  inst.type = &t;
  inst.literal = true;
  inst.quartic = TernaryQuartic(*fig.literal);
  inst.group = &type_group(t.id);
  return inst;
}

namespace {

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json params_json(const CurveType& t, std::span<const Complex> p) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < p.size() && i < t.param_names.size(); ++i) j[t.param_names[i]] = complex_json(p[i]);
  return j;
}

}  // namespace

Verification verify_type(const CurveType& t, const std::optional<std::vector<Complex>>& params,
                         const VerifyOptions& opt) {
  Instance inst = params ? instantiate(t, *params) : instantiate_default(t);
  const FiniteProjGroup& g = *inst.group;

  // Generators must preserve the curve before any line is matched.
  std::vector<std::string> invariance;
  for (std::size_t k : g.generators()) {
    const double d = act_on_quartic(g.element(k), inst.quartic).distance(inst.quartic);
    if (d > 1e-8) invariance.push_back("generator " + std::to_string(k) + " moves the quartic by " + std::to_string(d));
  }

  BitangentSet s = solve_all(inst.quartic, opt.solver);
  OrbitDecomposition d = compute_orbits(g, s);
  BurnsideElement b = to_burnside(g, d);
  MatchReport r = match_expected(g, d, b, t.expected);
  r.type = t.name;
  for (auto& m : invariance) r.mismatches.insert(r.mismatches.begin(), std::move(m));

  const std::size_t real = count_real(s);
  r.extra["realCount"] = real;
  r.extra["params"] = params_json(t, inst.params);
  r.extra["literal"] = inst.literal;
  if (!params) {
    const std::size_t want = t.figures.front().real_count;
    r.extra["expectedRealCount"] = want;
    if (real != want)
      r.mismatches.push_back("real bitangents " + std::to_string(real) + ", expected " + std::to_string(want));
  }
  nlohmann::json orbit_reals = nlohmann::json::array();
  for (const Orbit& o : d.orbits) orbit_reals.push_back(o.real_count);
  r.extra["orbitRealCounts"] = orbit_reals;
  r.extra["warnings"] = inst.warnings;
  if (opt.probe_full_group) {
    const std::size_t full = find_automorphisms(s).size();
    r.extra["fullAutomorphismOrder"] = full;
    if (full != g.order())
      r.extra["warnings"].push_back("the curve has " + std::to_string(full) + " automorphisms, more than the " +
                                    std::to_string(g.order()) + " of type " + t.name);
  }
  return Verification{std::move(inst), std::move(s), std::move(d), std::move(b), std::move(r)};
}

std::vector<std::vector<Complex>> random_valid_params(const CurveType& t, std::size_t count, std::mt19937_64& rng,
                                                      double margin, double range) {
  std::uniform_real_distribution<double> u(-range, range);
  std::vector<std::vector<Complex>> out;
  while (out.size() < count) {
    std::vector<Complex> p(t.param_names.size());
    for (auto& z : p) z = Complex(u(rng), u(rng));
    if (exclusion_hits(t, p, margin).empty()) out.push_back(std::move(p));
  }
  return out;
}

IndependenceResult independence_check(const CurveType& t, const std::vector<std::vector<Complex>>& samples,
                                      const SolverConfig& cfg) {
  IndependenceResult r;
  r.samples = samples;
  VerifyOptions opt;
  opt.solver = cfg;
  for (const auto& p : samples) {
    try {
      r.decompositions.push_back(verify_type(t, p, opt).burnside);
    } catch (const Error& e) {
      std::string where;
      for (const auto& z : p) where += " (" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
      throw Error("type " + t.name + " at" + where + ": " + e.what());
    }
  }
  for (std::size_t i = 1; i < r.decompositions.size(); ++i)
    if (!burnside_equivalent(r.decompositions[0], r.decompositions[i])) r.equal = false;
  return r;
}

nlohmann::json catalog_row(const CurveType& t) {
  nlohmann::json defaults;
  const FigureExample& fig = t.figures.front();
  if (fig.literal) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Complex& z : *fig.literal) coeffs.push_back(complex_json(z));
    defaults = {{"literal", coeffs}};
  } else {
    defaults = params_json(t, fig.params);
  }
  return {{"type", t.name},
          {"group", t.group_name},
          {"order", t.order},
          {"gapId", t.gap_id},
          {"paramNames", t.param_names},
          {"defaults", defaults},
          {"expectedDecomposition", t.expected.str()}};
}

}  // namespace bitan
