#include "bitan/polynum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "bitan/errors.hpp"
#include "bitan/kernels/kernels.hpp"

namespace bitan {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const std::vector<Complex>& c) {
  for (const Complex& z : c) {
    if (!is_finite(z)) throw std::invalid_argument("non-finite polynomial coefficient");
  }
}

}  // namespace

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  require_finite(coeffs_);
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

UniPoly UniPoly::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return UniPoly(std::move(c));
}

double UniPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& z : coeffs_) m = std::max(m, std::abs(z));
  return m;
}

Complex UniPoly::operator()(Complex t) const {
  Complex acc{};
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::scaled(Complex s) const {
  std::vector<Complex> c = coeffs_;
  for (Complex& z : c) z *= s;
  return UniPoly(std::move(c));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  return scaled(1.0 / leading());
}

UniPoly UniPoly::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
  return UniPoly(std::move(c));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + b.scaled(-1.0); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(c));
}

// ---------------------------------------------------------------- BiPoly

BiPoly::BiPoly(std::vector<std::vector<Complex>> grid) : grid_(std::move(grid)) {
  std::size_t cols = 0;
  for (const auto& row : grid_) {
    require_finite(row);
    cols = std::max(cols, row.size());
  }
  for (auto& row : grid_) row.resize(cols);
  trim();
}

void BiPoly::trim() {
  while (!grid_.empty() &&
         std::all_of(grid_.back().begin(), grid_.back().end(), [](Complex z) { return z == Complex{}; }))
    grid_.pop_back();
  if (grid_.empty()) return;
  std::size_t cols = grid_[0].size();
  while (cols > 0 &&
         std::all_of(grid_.begin(), grid_.end(), [&](const auto& row) { return row[cols - 1] == Complex{}; }))
    --cols;
  if (cols == 0) {
    grid_.clear();
    return;
  }
  for (auto& row : grid_) row.resize(cols);
}

BiPoly BiPoly::constant(Complex c) { return BiPoly({{c}}); }

BiPoly BiPoly::u_power(int k, Complex c) {
  std::vector<std::vector<Complex>> g(static_cast<std::size_t>(k) + 1, std::vector<Complex>(1));
  g[static_cast<std::size_t>(k)][0] = c;
  return BiPoly(std::move(g));
}

BiPoly BiPoly::v_power(int k, Complex c) {
  std::vector<std::vector<Complex>> g(1, std::vector<Complex>(static_cast<std::size_t>(k) + 1));
  g[0][static_cast<std::size_t>(k)] = c;
  return BiPoly(std::move(g));
}

int BiPoly::total_degree() const {
  int d = -1;
  for (std::size_t i = 0; i < grid_.size(); ++i)
    for (std::size_t j = 0; j < grid_[i].size(); ++j)
      if (grid_[i][j] != Complex{}) d = std::max(d, static_cast<int>(i + j));
  return d;
}

Complex BiPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i > degree_u() || j > degree_v()) return {};
  return grid_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

double BiPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& row : grid_)
    for (const Complex& z : row) m = std::max(m, std::abs(z));
  return m;
}

Complex BiPoly::operator()(Complex u, Complex v) const { return at(Var::u, u)(v); }

UniPoly BiPoly::at(Var var, Complex value) const {
  if (grid_.empty()) return {};
  if (var == Var::u) {
    std::vector<Complex> c(grid_[0].size());
    for (std::size_t i = grid_.size(); i-- > 0;)
      for (std::size_t j = 0; j < c.size(); ++j) c[j] = c[j] * value + grid_[i][j];
    return UniPoly(std::move(c));
  }
  std::vector<Complex> c(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    Complex acc{};
    for (std::size_t j = grid_[i].size(); j-- > 0;) acc = acc * value + grid_[i][j];
    c[i] = acc;
  }
  return UniPoly(std::move(c));
}

std::vector<UniPoly> BiPoly::coefficients_in(Var var) const {
  std::vector<UniPoly> out;
  if (grid_.empty()) return out;
  if (var == Var::u) {
    for (const auto& row : grid_) out.emplace_back(row);
    return out;
  }
  for (std::size_t j = 0; j < grid_[0].size(); ++j) {
    std::vector<Complex> col(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) col[i] = grid_[i][j];
    out.emplace_back(std::move(col));
  }
  return out;
}

BiPoly BiPoly::derivative(Var var) const {
  if (grid_.empty()) return {};
  std::vector<std::vector<Complex>> g;
  if (var == Var::u) {
    for (std::size_t i = 1; i < grid_.size(); ++i) {
      g.push_back(grid_[i]);
      for (Complex& z : g.back()) z *= static_cast<double>(i);
    }
  } else {
    for (const auto& row : grid_) {
      std::vector<Complex> r;
      for (std::size_t j = 1; j < row.size(); ++j) r.push_back(row[j] * static_cast<double>(j));
      g.push_back(std::move(r));
    }
  }
  return BiPoly(std::move(g));
}

BiPoly BiPoly::scaled(Complex s) const {
  auto g = grid_;
  for (auto& row : g)
    for (Complex& z : row) z *= s;
  return BiPoly(std::move(g));
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  const std::size_t rows = std::max(a.grid_.size(), b.grid_.size());
  const std::size_t cols = static_cast<std::size_t>(std::max(a.degree_v(), b.degree_v()) + 1);
  std::vector<std::vector<Complex>> g(rows, std::vector<Complex>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      g[i][j] = a.coeff(static_cast<int>(i), static_cast<int>(j)) + b.coeff(static_cast<int>(i), static_cast<int>(j));
  return BiPoly(std::move(g));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + b.scaled(-1.0); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::size_t rows = a.grid_.size() + b.grid_.size() - 1;
  const std::size_t cols = a.grid_[0].size() + b.grid_[0].size() - 1;
  std::vector<std::vector<Complex>> g(rows, std::vector<Complex>(cols));
  for (std::size_t i = 0; i < a.grid_.size(); ++i)
    for (std::size_t j = 0; j < a.grid_[i].size(); ++j) {
      const Complex x = a.grid_[i][j];
      if (x == Complex{}) continue;
      for (std::size_t k = 0; k < b.grid_.size(); ++k)
        for (std::size_t l = 0; l < b.grid_[k].size(); ++l) g[i + k][j + l] += x * b.grid_[k][l];
    }
  return BiPoly(std::move(g));
}

double BinaryQuartic::scale() const {
  double m = 0.0;
  for (const Complex& z : c) m = std::max(m, std::abs(z));
  return m;
}

// ---------------------------------------------------------------- resultants

namespace {

// Coefficients of p in `var`, evaluated at other = value, padded to the
// formal degree.
std::vector<Complex> coefficients_at(const BiPoly& p, Var var, Complex value) {
  const Var other = var == Var::u ? Var::v : Var::u;
  // p.at(other, value) is a polynomial in var but trims exact zeros; pad back.
  UniPoly q = p.at(other, value);
  std::vector<Complex> c(static_cast<std::size_t>(p.degree_in(var) + 1));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = q[i];
  return c;
}

double inf_norm(const std::vector<Complex>& c) {
  double m = 0.0;
  for (const Complex& z : c) m = std::max(m, std::abs(z));
  return m;
}

Complex sylvester_det(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  const int m = static_cast<int>(a.size()) - 1;
  const int n = static_cast<int>(b.size()) - 1;
  const int size = m + n;
  if (size == 0) return 1.0;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + k) = a[static_cast<std::size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = b[static_cast<std::size_t>(n - k)];
  return s.partialPivLu().determinant();
}

}  // namespace

Complex sylvester_determinant_at(const BiPoly& p, const BiPoly& q, Var var, Complex value) {
  if (p.is_zero() || q.is_zero()) throw DegenerateElimination("resultant of a zero polynomial");
  return sylvester_det(coefficients_at(p, var, value), coefficients_at(q, var, value));
}

int resultant_degree_bound(const BiPoly& p, const BiPoly& q, Var var) {
  const Var other = var == Var::u ? Var::v : Var::u;
  return q.degree_in(var) * p.degree_in(other) + p.degree_in(var) * q.degree_in(other);
}

UniPoly interpolate_on_circle(std::span<const Complex> values, double radius) {
  const std::size_t n = values.size();
  std::vector<Complex> c(n);
  const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
  double rpow = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k)
      acc += values[k] * std::polar(1.0, step * static_cast<double>((j * k) % n));
    c[j] = acc / (static_cast<double>(n) * rpow);
    rpow *= radius;
  }
  return UniPoly(std::move(c));
}

UniPoly resultant_wrt(const BiPoly& p, const BiPoly& q, Var var, ResultantOptions opts) {
  if (p.is_zero() || q.is_zero()) throw DegenerateElimination("resultant of a zero polynomial");
  const int bound = std::max(resultant_degree_bound(p, q, var), 0);
  const std::size_t n = static_cast<std::size_t>(bound) + 1;
  const double radius = opts.radius > 0.0 ? opts.radius : 1.0;
  std::vector<Complex> values(n);
  double scale = 0.0, vmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex w = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    const auto a = coefficients_at(p, var, w);
    const auto b = coefficients_at(q, var, w);
    values[k] = sylvester_det(a, b);
    const double bound_k = std::pow(inf_norm(a), static_cast<double>(b.size() - 1)) *
                           std::pow(inf_norm(b), static_cast<double>(a.size() - 1));
    scale = std::max(scale, bound_k);
    vmax = std::max(vmax, std::abs(values[k]));
  }
  if (vmax <= 1e-11 * scale) return {};
  UniPoly r = interpolate_on_circle(values, radius);
  std::vector<Complex> c = r.coeffs();
  const double noise = 1e-12 * vmax;
  double rpow = 1.0;
  for (Complex& z : c) {
    if (std::abs(z) * rpow <= noise) z = 0.0;
    rpow *= radius;
  }
  return UniPoly(std::move(c));
}

// ---------------------------------------------------------------- roots

double fujiwara_bound(const UniPoly& p) {
  const int n = p.degree();
  if (n < 1) return 0.0;
  const Complex an = p.leading();
  double b = 0.0;
  for (int k = 1; k <= n; ++k) {
    double ratio = std::abs(p[static_cast<std::size_t>(n - k)] / an);
    if (k == n) ratio /= 2.0;
    b = std::max(b, std::pow(ratio, 1.0 / k));
  }
  return 2.0 * b;
}

namespace {

struct SplitVec {
  std::vector<double> re, im;
  explicit SplitVec(std::size_t n) : re(n), im(n) {}
  kernels::CSpan view() const { return {re.data(), im.data(), re.size()}; }
  kernels::CMutSpan mut() { return {re.data(), im.data(), re.size()}; }
  Complex at(std::size_t i) const { return {re[i], im[i]}; }
  void set(std::size_t i, Complex z) {
    re[i] = z.real();
    im[i] = z.imag();
  }
};

// Rounding-error bound for Horner evaluation at z.
double horner_error_bound(const UniPoly& p, Complex z) {
  double acc = 0.0;
  const double r = std::abs(z);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * r + std::abs(p.coeffs()[i]);
  return 4.0 * static_cast<double>(p.coeffs().size()) * kEps * acc;
}

std::vector<Complex> aberth(const UniPoly& p, const RootOptions& opts) {
  const std::size_t n = static_cast<std::size_t>(p.degree());
  const auto& kt = kernels::active();

  SplitVec coeffs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) coeffs.set(i, p.coeffs()[i]);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  const double radius = std::max(fujiwara_bound(p), 1e-300);
  const double phase = 2.0 * std::numbers::pi * (0.25 + 0.1 * jitter(rng));
  SplitVec z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ang = phase + 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.2 * jitter(rng)) /
                                   static_cast<double>(n);
    z.set(i, std::polar(radius * (1.0 + 0.05 * jitter(rng)), ang));
  }

  SplitVec val(n), der(n), sums(n);
  std::vector<char> done(n, 0);
  for (int it = 0; it < opts.max_iter; ++it) {
    kt.horner_with_derivative(coeffs.view(), z.view(), val.mut(), der.mut());
    kt.aberth_sums(z.view(), sums.mut());
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Complex zi = z.at(i);
      const Complex pv = val.at(i);
      const bool at_noise = std::abs(pv) <= horner_error_bound(p, zi);
      const Complex ratio = pv / der.at(i);
      const Complex w = ratio / (1.0 - ratio * sums.at(i));
      if (at_noise) {
        // one last correction, then freeze
        if (is_finite(w)) z.set(i, zi - w);
        done[i] = 1;
        continue;
      }
      if (!is_finite(w)) {
        all = false;
        z.set(i, zi * Complex(1.0 + 1e-3, 1e-3) + 1e-8);
        continue;
      }
      z.set(i, zi - w);
      if (std::abs(w) <= 2.0 * kEps * std::abs(zi)) done[i] = 1;
      else all = false;
    }
    if (all) break;
  }

  std::vector<Complex> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = z.at(i);
  return roots;
}

void newton_polish(const UniPoly& p, std::vector<Complex>& roots) {
  const UniPoly dp = p.derivative();
  for (Complex& r : roots) {
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
      const Complex d = dp(r);
      if (d == Complex{}) break;
      const Complex step = p(r) / d;
      const double len = std::abs(step);
      // stop once steps stop shrinking; rounding noise has taken over
      if (!is_finite(step) || len >= 0.5 * last) break;
      r -= step;
      last = len;
      if (len <= kEps * std::abs(r)) break;
    }
  }
}

}  // namespace

std::vector<Complex> roots_all(const UniPoly& input, double tol, RootOptions opts) {
  UniPoly p = input.trimmed(opts.drop_tol);
  if (p.degree() < 1) throw std::invalid_argument("roots_all needs a polynomial of degree >= 1");

  // Exact roots at the origin.
  std::vector<Complex> roots;
  std::size_t low = 0;
  while (p.coeffs()[low] == Complex{}) ++low;
  roots.assign(low, Complex{});
  UniPoly q(std::vector<Complex>(p.coeffs().begin() + static_cast<long>(low), p.coeffs().end()));
  q = q.monic();

  if (q.degree() == 1) {
    roots.push_back(-q[0]);
  } else if (q.degree() > 1) {
    auto rest = aberth(q, opts);
    newton_polish(q, rest);
    roots.insert(roots.end(), rest.begin(), rest.end());
  }

  const double cmax = p.max_abs_coeff();
  const int deg = p.degree();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Complex r = roots[i];
    const double bound = tol * cmax * std::pow(std::max(1.0, std::abs(r)), deg);
    if (!is_finite(r) || std::abs(p(r)) > bound) {
      throw NonConvergence("root approximation failed the residual bound", i);
    }
  }
  return roots;
}

std::vector<std::vector<std::size_t>> cluster_roots(const UniPoly& input, std::span<const Complex> roots,
                                                    double cluster_tol) {
  const UniPoly p = input.monic();
  const UniPoly dp = p.derivative();
  const std::size_t n = roots.size();
  // The disk of radius deg * |p/p'| around any point contains a root.
  std::vector<double> radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double num = static_cast<double>(n) * (std::abs(p(roots[i])) + horner_error_bound(p, roots[i]));
    const double den = std::abs(dp(roots[i]));
    radius[i] = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(roots[i] - roots[j]);
      if (d <= cluster_tol || d <= radius[i] + radius[j]) parent[find(i)] = find(j);
    }

  std::vector<std::vector<std::size_t>> clusters;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(clusters.size());
      clusters.emplace_back();
    }
    clusters[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return clusters;
}

UniPoly square_free_part(const UniPoly& p, double cluster_tol, RootOptions opts) {
  const UniPoly q = p.trimmed(opts.drop_tol);
  const auto roots = roots_all(q, 1e-10, opts);
  const auto clusters = cluster_roots(q, roots, cluster_tol);
  std::vector<Complex> reps;
  for (const auto& cl : clusters) {
    Complex sum{};
    for (std::size_t i : cl) sum += roots[i];
    Complex r = sum / static_cast<double>(cl.size());
    // An m-fold root is a simple root of the (m-1)-th derivative.
    UniPoly d = q;
    for (std::size_t k = 1; k < cl.size(); ++k) d = d.derivative();
    const UniPoly dd = d.derivative();
    for (int it = 0; it < 3 && cl.size() > 1; ++it) {
      const Complex den = dd(r);
      if (den == Complex{}) break;
      const Complex step = d(r) / den;
      if (!is_finite(step) || std::abs(step) > cluster_tol + std::abs(r) * 1e-3) break;
      r -= step;
    }
    reps.push_back(r);
  }
  return UniPoly::from_roots(reps);
}

}  // namespace bitan
