#include "bitan/lattice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <numbers>
#include <random>

#include "bitan/errors.hpp"

namespace bitan {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Vec to_vec(const QuarticCoeffs& c) {
  Vec v(15);
  for (int i = 0; i < 15; ++i) v(i) = c[static_cast<std::size_t>(i)];
  return v;
}

// Matrix of f -> f o g^-1 on coefficient vectors.
Mat action_matrix(const ProjTransform& g) {
  const Eigen::Matrix3cd inv = g.matrix().inverse();
  Mat t(15, 15);
  for (int m = 0; m < 15; ++m) {
    QuarticCoeffs e{};
    e[static_cast<std::size_t>(m)] = 1.0;
    t.col(m) = to_vec(substitute(e, inv));
  }
  return t;
}

struct LinearSolve {
  bool ok = false;
  Vec x;
  Mat kernel;
  double residual = 0.0;
};

LinearSolve least_squares(const Mat& a, const Vec& rhs) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  LinearSolve r;
  r.x = Vec::Zero(a.cols());
  for (Eigen::Index i = 0; i < rank; ++i)
    r.x += svd.matrixV().col(i) * (svd.matrixU().col(i).adjoint() * rhs)(0) / s(i);
  r.kernel = svd.matrixV().rightCols(a.cols() - rank);
  r.residual = (a * r.x - rhs).norm() / (1.0 + rhs.norm());
  r.ok = r.residual < 1e-8;
  return r;
}

// Reduced echelon basis, offset zeroed at the pivots.
AffineSolution canonical(const Vec& offset, const Mat& kernel) {
  const Eigen::Index n = offset.size();
  Mat rows = kernel.transpose();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < rows.rows(); ++c) {
    Eigen::Index best = r;
    for (Eigen::Index i = r; i < rows.rows(); ++i)
      if (std::abs(rows(i, c)) > std::abs(rows(best, c))) best = i;
    if (std::abs(rows(best, c)) < 1e-10) continue;
    rows.row(r).swap(rows.row(best));
    rows.row(r) /= rows(r, c);
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
      if (i != r) rows.row(i) -= rows(i, c) * rows.row(r);
    pivots.push_back(c);
    ++r;
  }
  Vec off = offset;
  for (std::size_t k = 0; k < pivots.size(); ++k) off -= off(pivots[k]) * rows.row(static_cast<Eigen::Index>(k)).transpose();
  auto clean = [](Complex z) {
    return Complex(std::abs(z.real()) < 1e-12 ? 0.0 : z.real(), std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag());
  };
  AffineSolution s;
  for (Eigen::Index i = 0; i < n; ++i) s.offset.push_back(clean(off(i)));
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    std::vector<Complex> b;
    for (Eigen::Index i = 0; i < n; ++i) b.push_back(clean(rows(static_cast<Eigen::Index>(k), i)));
    s.basis.push_back(std::move(b));
  }
  return s;
}

std::string fmt(Complex z) {
  char buf[96];
  if (std::abs(z.imag()) < 1e-12)
    std::snprintf(buf, sizeof buf, "%.10g", z.real());
  else if (std::abs(z.real()) < 1e-12)
    std::snprintf(buf, sizeof buf, "%.10gi", z.imag());
  else
    std::snprintf(buf, sizeof buf, "(%.10g%+.10gi)", z.real(), z.imag());
  return buf;
}

nlohmann::json cjson(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json matrix_json(const Eigen::Matrix3cd& m) {
  nlohmann::json j = nlohmann::json::array();
  for (int r = 0; r < 3; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 3; ++c) row.push_back(cjson(m(r, c)));
    j.push_back(row);
  }
  return j;
}

}  // namespace

bool AffineSolution::contains(std::span<const Complex> p, double tol) const {
  if (p.size() != offset.size()) return false;
  std::vector<Complex> d(p.begin(), p.end());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= offset[i];
  for (const auto& b : basis) {
    std::size_t piv = 0;
    while (piv < b.size() && std::abs(b[piv]) < 1e-12) ++piv;
    const Complex t = d[piv];
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= t * b[i];
  }
  double err = 0.0;
  for (const auto& z : d) err = std::max(err, std::abs(z));
  return err <= tol;
}

std::string AffineSolution::describe(const std::vector<std::string>& names) const {
  std::vector<std::size_t> pivots;
  for (const auto& b : basis) {
    std::size_t piv = 0;
    while (piv < b.size() && std::abs(b[piv]) < 1e-12) ++piv;
    pivots.push_back(piv);
  }
  std::string out;
  for (std::size_t j = 0; j < offset.size(); ++j) {
    if (!out.empty()) out += "; ";
    const auto it = std::find(pivots.begin(), pivots.end(), j);
    if (it != pivots.end()) {
      out += names[j] + " free";
      continue;
    }
    std::string e;
    if (std::abs(offset[j]) > 0.0) e = fmt(offset[j]);
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (std::abs(basis[k][j]) > 0.0) {
        if (!e.empty()) e += " + ";
        e += fmt(basis[k][j]) + "*" + names[pivots[k]];
      }
    out += names[j] + " = " + (e.empty() ? "0" : e);
  }
  return out;
}

bool SpecializationResult::contains(std::span<const Complex> p, double tol) const {
  return std::any_of(solutions.begin(), solutions.end(), [&](const AffineSolution& s) { return s.contains(p, tol); });
}

nlohmann::json SpecializationResult::to_json() const {
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& s : solutions) {
    nlohmann::json lam = nlohmann::json::array(), off = nlohmann::json::array(), basis = nlohmann::json::array();
    for (auto z : s.lambdas) lam.push_back(cjson(z));
    for (auto z : s.offset) off.push_back(cjson(z));
    for (const auto& b : s.basis) {
      nlohmann::json v = nlohmann::json::array();
      for (auto z : b) v.push_back(cjson(z));
      basis.push_back(v);
    }
    sols.push_back({{"lambdas", lam},
                    {"offset", off},
                    {"basis", basis},
                    {"residual", s.residual},
                    {"description", s.describe(params)}});
  }
  return {{"params", params}, {"feasible", feasible()}, {"solutions", sols}};
}

SpecializationResult specialize(const ParametricQuartic& family, std::span<const ProjTransform> gens, double) {
  const auto np = static_cast<Eigen::Index>(family.linear.size());
  if (np == 0) throw DegenerateFamily("family has no parameters");
  const Vec c = to_vec(family.constant);
  std::vector<Vec> l;
  for (const auto& q : family.linear) l.push_back(to_vec(q));

  // Rows for one generator at one lambda: sum p_i (T L_i - lambda L_i) = lambda c - T c.
  struct Block {
    Mat a;
    Vec rhs;
  };
  auto block = [&](const Mat& t, Complex lam) {
    Block b{Mat(15, np), lam * c - t * c};
    for (Eigen::Index i = 0; i < np; ++i) b.a.col(i) = t * l[static_cast<std::size_t>(i)] - lam * l[static_cast<std::size_t>(i)];
    return b;
  };

  std::vector<Mat> ts;
  std::vector<std::vector<Complex>> feasible;
  for (const auto& g : gens) {
    const Mat t = action_matrix(g);
    Eigen::ComplexEigenSolver<Mat> es(t, false);
    std::vector<Complex> cands;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const Complex ev = es.eigenvalues()(i);
      if (std::none_of(cands.begin(), cands.end(), [&](Complex x) { return std::abs(x - ev) < 1e-7 * (1 + std::abs(ev)); }))
        cands.push_back(ev);
    }
    std::vector<Complex> ok;
    for (Complex lam : cands) {
      const Block b = block(t, lam);
      if (least_squares(b.a, b.rhs).ok) ok.push_back(lam);
    }
    ts.push_back(t);
    feasible.push_back(std::move(ok));
  }

  SpecializationResult res;
  res.params = family.params;
  if (std::any_of(feasible.begin(), feasible.end(), [](const auto& v) { return v.empty(); })) return res;

  std::vector<std::size_t> idx(gens.size(), 0);
  while (true) {
    Mat a(15 * static_cast<Eigen::Index>(gens.size()), np);
    Vec rhs(a.rows());
    std::vector<Complex> lams;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Complex lam = feasible[k][idx[k]];
      lams.push_back(lam);
      const Block b = block(ts[k], lam);
      a.middleRows(15 * static_cast<Eigen::Index>(k), 15) = b.a;
      rhs.segment(15 * static_cast<Eigen::Index>(k), 15) = b.rhs;
    }
    const LinearSolve s = least_squares(a, rhs);
    // the zero quartic is not a solution
    const Vec f = c + [&] {
      Vec acc = Vec::Zero(15);
      for (Eigen::Index i = 0; i < np; ++i) acc += s.x(i) * l[static_cast<std::size_t>(i)];
      return acc;
    }();
    if (s.ok && (f.norm() > 1e-9 || s.kernel.cols() > 0)) {
      AffineSolution sol = canonical(s.x, s.kernel);
      sol.lambdas = lams;
      sol.residual = s.residual;
      res.solutions.push_back(std::move(sol));
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == feasible[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return res;
}

std::vector<ProjTransform> extra_automorphisms(const CurveType& t, const TernaryQuartic& f, std::size_t* full_order) {
  const FiniteProjGroup& g = type_group(t.id);
  const auto all = find_automorphisms(solve_all(f));
  if (full_order) *full_order = all.size();
  std::vector<ProjTransform> extra;
  for (const auto& a : all)
    if (g.find(a) == FiniteProjGroup::npos) extra.push_back(a);
  return extra;
}

bool LatticeEdge::confirmed() const {
  return std::all_of(checks.begin(), checks.end(), [](const LatticeCheck& c) { return !c.label || c.confirmed; });
}

nlohmann::json LatticeEdge::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks)
    cs.push_back({{"method", c.method}, {"claim", c.claim}, {"label", c.label}, {"confirmed", c.confirmed}, {"detail", c.detail}});
  return {{"from", from}, {"to", to}, {"label", label}, {"dashed", dashed}, {"confirmed", confirmed()}, {"checks", cs},
          {"note", note}};
}

namespace {

std::vector<ProjTransform> gens_of(const CurveType& t) {
  std::vector<ProjTransform> g;
  for (const auto& m : t.generators) g.emplace_back(m);
  return g;
}

// Family (optionally composed with M) against the generators of `to`; every
// claimed point must lie in the solution set.
LatticeCheck direct(const CurveType& from, const CurveType& to, const std::vector<std::vector<Complex>>& claims,
                    std::string claim, const Eigen::Matrix3cd* m = nullptr) {
  LatticeCheck c;
  c.method = m ? "conjugated" : "direct";
  c.claim = std::move(claim);
  const ParametricQuartic fam = m ? from.family.substituted(*m) : from.family;
  const auto gens = gens_of(to);
  const SpecializationResult r = specialize(fam, gens);
  c.confirmed = r.feasible();
  for (const auto& p : claims) c.confirmed = c.confirmed && r.contains(from.linearize(p));
  c.detail["specialization"] = r.to_json();
  if (m) c.detail["conjugator"] = matrix_json(*m);
  return c;
}

// A dashed edge: no solution may leave the excluded loci of the source.
LatticeCheck dashed_check(const CurveType& from, const CurveType& to) {
  LatticeCheck c;
  c.method = "direct";
  c.claim = "no valid special values";
  const SpecializationResult r = specialize(from.family, gens_of(to));
  std::mt19937_64 rng(99);
  std::normal_distribution<double> nd;
  bool valid_found = false;
  for (const auto& s : r.solutions)
    for (int trial = 0; trial < (s.basis.empty() ? 1 : 3); ++trial) {
      std::vector<Complex> p = s.offset;
      for (const auto& b : s.basis) {
        const Complex t(nd(rng), nd(rng));
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * b[i];
      }
      const auto hits = exclusion_hits(from, p);
      if (std::none_of(hits.begin(), hits.end(), [](const ExclusionHit& h) { return h.rule->rejects; }))
        valid_found = true;
    }
  c.confirmed = !valid_found;
  c.detail["specialization"] = r.to_json();
  c.detail["infeasible"] = !r.feasible();
  return c;
}

// Automorphisms of the curve at a point of the claimed locus, found from the
// bitangents alone; the family is then specialized against one of the new
// ones.
LatticeCheck witness(const CurveType& from, const CurveType& to, const std::vector<Complex>& point, std::string claim,
                     bool label = true) {
  LatticeCheck c;
  c.method = "witness";
  c.claim = std::move(claim);
  c.label = label;
  nlohmann::json pj = nlohmann::json::array();
  for (auto z : point) pj.push_back(cjson(z));
  c.detail["point"] = pj;
  c.detail["targetOrder"] = to.order;
  try {
    const TernaryQuartic f(from.equation(point));
    std::size_t full = 0;
    const auto extra = extra_automorphisms(from, f, &full);
    c.detail["fullOrder"] = full;
    if (!extra.empty()) {
      const ProjTransform& w = extra.front();
      c.detail["witness"] = matrix_json(w.matrix());
      const SpecializationResult r = specialize(from.family, std::span<const ProjTransform>(&w, 1));
      c.detail["specialization"] = r.to_json();
      c.confirmed = full == to.order && r.contains(from.linearize(point), 1e-7);
    }
  } catch (const Error& e) {
    c.detail["error"] = e.what();
  }
  return c;
}

}  // namespace

std::vector<LatticeEdge> lattice_report() {
  const CurveType &I = curve_type(1), &II = curve_type(2), &III = curve_type(3), &IV = curve_type(4),
                  &V = curve_type(5), &VI = curve_type(6), &VII = curve_type(7), &VIII = curve_type(8),
                  &IX = curve_type(9), &X = curve_type(10), &XI = curve_type(11), &XII = curve_type(12);
  const Complex i(0.0, 1.0);
  const Complex z3 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex r7 = std::sqrt(Complex(-7.0)), r3 = 2.0 * std::sqrt(Complex(-3.0));
  std::vector<LatticeEdge> out;

  {
    LatticeEdge e{"IV", "I", "a = 3/2(-1 +- sqrt(-7))", false, {}, ""};
    e.checks.push_back(witness(IV, I, {1.5 * (-1.0 + r7)}, "a = 3/2(-1 + sqrt(-7))"));
    e.checks.push_back(witness(IV, I, {1.5 * (-1.0 - r7)}, "a = 3/2(-1 - sqrt(-7))"));
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"IV", "II", "a = 0", false, {}, ""};
    e.checks.push_back(direct(IV, II, {{0.0}}, "a = 0"));
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"V", "II", "a = 0, +-6", false, {}, ""};
    e.checks.push_back(direct(V, II, {{0.0}}, "a = 0"));
    Eigen::Matrix3cd g;
    g << 1, 1, 0, 1, -1, 0, 0, 0, std::pow(8.0, 0.25);
    e.checks.push_back(direct(V, II, {{6.0}}, "a = 6", &g));
    // V(a) and V(-a) differ by y -> iy
    const Eigen::Matrix3cd dg = Eigen::Vector3cd(1.0, i, 1.0).asDiagonal() * g;
    e.checks.push_back(direct(V, II, {{-6.0}}, "a = -6", &dg));
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"V", "III", "a = +-2 sqrt(-3)", false, {}, ""};
    e.checks.push_back(direct(V, III, {{r3}}, "a = 2 sqrt(-3)"));
    const Eigen::Matrix3cd d = Eigen::Vector3cd(1.0, i, 1.0).asDiagonal();
    e.checks.push_back(direct(V, III, {{-r3}}, "a = -2 sqrt(-3)", &d));
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"VIII", "III", "a = 0", false, {}, ""};
    e.checks.push_back(witness(VIII, III, {0.0}, "a = 0"));
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"IX", "IV", "a = 0", false, {}, ""};
    e.checks.push_back(witness(IX, IV, {0.0, 1.0}, "a = 0 (b = 1)"));
    e.checks.push_back(witness(IX, IV, {0.0, -2.0}, "a = 0 (b = -2)"));
    // the Type IV pencil at A = -3 written in this normal form
    e.checks.push_back(witness(IX, IV, {-0.36, 0.0054}, "a = 9(A+2)/(2-A)^2, b = 27(A+1)(A+2)^3/(16(2-A)^4), A = -3",
                               false));
    e.note = "the curves with a = 0 keep an automorphism group of order 6; the Type IV locus is the curve in the derived check";
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"VII", "V", "b = 0", false, {}, ""};
    e.checks.push_back(direct(VII, V, {{-3.0, 0.0}, {0.7, 0.0}}, "b = 0, a free"));
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"VII", "IV", "", true, {}, ""};
    e.checks.push_back(dashed_check(VII, IV));
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"X", "VII", "{+-a, +-b, +-c} not all distinct", false, {}, ""};
    e.checks.push_back(witness(X, VII, {1.5, 1.5, -0.7}, "a = b"));
    e.checks.push_back(witness(X, VII, {1.5, -1.5, -0.7}, "a = -b"));
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"XI", "VIII", "a = -1 or b = -1", false, {}, ""};
    e.checks.push_back(witness(XI, VIII, {-1.0, 3.0}, "a = -1 (b = 3)"));
    e.checks.push_back(witness(XI, VIII, {Complex(0.3, 0.2), Complex(0.7, -0.2)}, "b = 1 - a", false));
    e.note = "the extra involution exists when the roots 0, 1, a, b pair up with equal sums (e.g. b = 1 - a)";
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"XI", "VI", "a = zeta3 or b = zeta3", false, {}, ""};
    e.checks.push_back(witness(XI, VI, {z3, 0.7}, "a = zeta3 (b = 0.7)"));
    e.checks.push_back(witness(XI, VI, {z3, z3 * z3}, "{a, b} = {zeta3, zeta3^2}", false));
    e.note = "order 9 needs one of 0, 1, a, b to be the center of an equilateral triangle on the other three";
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"XII", "X", "b = 0", false, {}, ""};
    Eigen::Matrix3cd d = Eigen::Vector3cd(1.0, -1.0, 1.0).asDiagonal();
    LatticeCheck c = direct(XII, X, {{0.3, 0.0, -0.8, 1.1}}, "b = 0");
    c.detail["note"] = "against the generators of X";
    e.checks.push_back(std::move(c));
    const ProjTransform dt(d);
    const SpecializationResult r = specialize(XII.family, std::span<const ProjTransform>(&dt, 1));
    LatticeCheck c2{"direct", "b = 0 from diag(1,-1,1) alone", true, r.feasible() && r.contains(std::vector<Complex>{0.3, 0.0, -0.8, 1.1}),
                    {{"specialization", r.to_json()}}};
    e.checks.push_back(std::move(c2));
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"XII", "IX", "a = -2, b = 0, c = -d", false, {}, ""};
    e.checks.push_back(witness(XII, IX, {-2.0, 0.0, 1.0, -1.0}, "a = -2, b = 0, c = -d = 1"));
    e.note = "on this locus the quartic is a quadratic form in x^2 - y^2 and z^2, hence a product of two conics";
    out.push_back(std::move(e));
  }
  {
    LatticeEdge e{"XII", "VIII", "", true, {}, ""};
    e.checks.push_back(dashed_check(XII, VIII));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace bitan
