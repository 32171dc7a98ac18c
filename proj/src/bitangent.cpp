#include "bitan/bitangent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "bitan/errors.hpp"

namespace bitan {

namespace {

constexpr int kBitangentCount = 28;
constexpr std::size_t kSamples = 64;
constexpr int kMaxAttempts = 6;
constexpr int kPolishIterations = 50;
// A polished line further than this from its candidate is treated as a
// failure: the candidate was not in the basin of the line it converged to.
constexpr double kDriftTol = 1e-2;
// Coefficients of the eliminant beyond degree 28 must be this small relative
// to the rest, otherwise the c4^8 division was not exact and the frame is
// rejected.
constexpr double kTailTol = 1e-6;
constexpr double kGradientTol = 1e-6;

using TPoly = std::vector<BiPoly>;  // index = power of t

TPoly tmul(const TPoly& a, const TPoly& b) {
  TPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

std::array<std::size_t, 3> chart_indices(int pinned) {
  const auto k = static_cast<std::size_t>(pinned);
  const std::size_t i = k == 0 ? 1 : 0;
  const std::size_t j = k == 2 ? 1 : 2;
  return {i, j, k};
}

}  // namespace

std::pair<Complex, Complex> perfect_square_conditions(const BinaryQuartic& q) {
  const auto& c = q.c;
  const Complex g1 = c[3] * c[3] * c[3] - 4.0 * c[4] * c[3] * c[2] + 8.0 * c[4] * c[4] * c[1];
  const Complex h = 4.0 * c[4] * c[2] - c[3] * c[3];
  const Complex g2 = h * h - 64.0 * c[4] * c[4] * c[4] * c[0];
  return {g1, g2};
}

std::array<BiPoly, 5> chart_restriction(const TernaryQuartic& f, int pinned) {
  const auto [i, j, k] = chart_indices(pinned);
  std::array<TPoly, 3> coord;
  coord[i] = {BiPoly::constant(1.0)};
  coord[j] = {BiPoly{}, BiPoly::constant(1.0)};
  coord[k] = {BiPoly::u_power(1, -1.0), BiPoly::v_power(1, -1.0)};
  std::array<std::array<TPoly, 5>, 3> pw;
  for (std::size_t r = 0; r < 3; ++r) {
    pw[r][0] = {BiPoly::constant(1.0)};
    for (std::size_t e = 1; e <= 4; ++e) pw[r][e] = tmul(pw[r][e - 1], coord[r]);
  }
  std::array<BiPoly, 5> out;
  const auto& mons = quartic_monomials();
  for (std::size_t m = 0; m < 15; ++m) {
    const Complex c = f.coeffs()[m];
    if (c == Complex{}) continue;
    const TPoly term = tmul(tmul(pw[0][static_cast<std::size_t>(mons[m].x)], pw[1][static_cast<std::size_t>(mons[m].y)]),
                            pw[2][static_cast<std::size_t>(mons[m].z)]);
    for (std::size_t d = 0; d < term.size() && d < 5; ++d) out[d] = out[d] + term[d].scaled(c);
  }
  return out;
}

std::string SolverDiagnostics::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["attempts"] = attempts;
  j["duplicates"] = duplicates;
  j["hyperflexes"] = hyperflexes;
  j["maxResidual"] = max_residual;
  j["charts"] = nlohmann::json::array();
  for (const auto& c : charts) {
    j["charts"].push_back({{"pinned", c.pinned},
                           {"degree", c.degree},
                           {"candidates", c.candidates},
                           {"accepted", c.accepted},
                           {"rejected", c.rejected},
                           {"tailRatio", c.tail_ratio}});
  }
  return j.dump();
}

std::size_t BitangentSet::find(const ProjLine& line, double tol) const {
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i].line.matches(line, tol)) return i;
  return items.size();
}

std::size_t count_real(const BitangentSet& s) {
  return static_cast<std::size_t>(std::count_if(s.items.begin(), s.items.end(), [](const Bitangent& b) { return b.is_real; }));
}

// ---------------------------------------------------------------- polishing

namespace {

// Homogeneous roots (t : s) of a binary quartic, each scaled to unit norm.
std::array<std::array<Complex, 2>, 4> homogeneous_roots(const std::array<Complex, 5>& c) {
  const bool finite_chart = std::abs(c[4]) >= std::abs(c[0]);
  // Roots in t of c, or in s = 1/t of the reversed polynomial.
  std::vector<Complex> coeffs(5);
  for (std::size_t m = 0; m < 5; ++m) coeffs[m] = finite_chart ? c[m] : c[4 - m];
  std::vector<Complex> r;
  try {
    r = roots_all(UniPoly(coeffs), 1e-6);
  } catch (const std::exception&) {
    r.clear();
  }
  std::array<std::array<Complex, 2>, 4> out{};
  for (std::size_t n = 0; n < 4; ++n) {
    // Missing roots (degree drop) sit at the other end of the chart.
    std::array<Complex, 2> ts = n < r.size() ? std::array<Complex, 2>{r[n], 1.0} : std::array<Complex, 2>{1.0, 0.0};
    if (!finite_chart) std::swap(ts[0], ts[1]);
    const double nn = std::sqrt(std::norm(ts[0]) + std::norm(ts[1]));
    out[n] = {ts[0] / nn, ts[1] / nn};
  }
  return out;
}

double chordal(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
  return std::abs(a[0] * b[1] - a[1] * b[0]);
}

// A quadratic q with c close to a multiple of q^2: pair the four roots of c
// into two close pairs and take one root from each pair.
std::array<Complex, 3> initial_square_root(const std::array<Complex, 5>& c) {
  const auto r = homogeneous_roots(c);
  static constexpr std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  double best = std::numeric_limits<double>::infinity();
  std::array<int, 4> pick = pairings[0];
  for (const auto& p : pairings) {
    const double d = chordal(r[static_cast<std::size_t>(p[0])], r[static_cast<std::size_t>(p[1])]) +
                     chordal(r[static_cast<std::size_t>(p[2])], r[static_cast<std::size_t>(p[3])]);
    if (d < best) {
      best = d;
      pick = p;
    }
  }
  auto mid = [&](int a, int b) {
    std::array<Complex, 2> x = r[static_cast<std::size_t>(a)], y = r[static_cast<std::size_t>(b)];
    // align phases before averaging
    const Complex dot = x[0] * std::conj(y[0]) + x[1] * std::conj(y[1]);
    if (std::abs(dot) > 0.0) {
      const Complex ph = dot / std::abs(dot);
      y[0] *= ph;
      y[1] *= ph;
    }
    return std::array<Complex, 2>{(x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0};
  };
  const auto p = mid(pick[0], pick[1]);
  const auto s = mid(pick[2], pick[3]);
  // (p1 t - p0)(s1 t - s0) with the chart s = 1
  return {p[0] * s[0], -(p[0] * s[1] + p[1] * s[0]), p[1] * s[1]};
}

// Least-squares alpha in c = alpha q^2.
Complex best_alpha(const std::array<Complex, 5>& c, const std::array<Complex, 3>& q) {
  const std::array<Complex, 5> s{q[0] * q[0], 2.0 * q[0] * q[1], q[1] * q[1] + 2.0 * q[0] * q[2], 2.0 * q[1] * q[2],
                                 q[2] * q[2]};
  Complex num{};
  double den = 0.0;
  for (std::size_t m = 0; m < 5; ++m) {
    num += std::conj(s[m]) * c[m];
    den += std::norm(s[m]);
  }
  return den > 0.0 ? num / den : Complex{1.0};
}

// Chart restrictions of one quartic and their partial derivatives, shared by
// every candidate.
class Polisher {
 public:
  Polisher(const TernaryQuartic& f, const SolverConfig& cfg) : f_(f), cfg_(cfg) {}

  Bitangent run(const ProjLine& candidate) {
    ProjLine line = candidate;
    int chart = static_cast<int>(canonical_pivot(line.coords()));
    for (int pass = 0; pass < 2; ++pass) {
      auto [polished, q] = newton(line, chart);
      const int next = static_cast<int>(canonical_pivot(polished.coords()));
      if (polished.distance(candidate) > kDriftTol)
        throw NonConvergence("polished line drifted away from its candidate");
      if (next == chart || pass == 1) return finish(polished, chart, q);
      line = polished;
      chart = next;
    }
    throw NonConvergence("chart selection did not settle");
  }

 private:
  struct Chart {
    std::array<BiPoly, 5> c, cu, cv;
  };

  const Chart& chart_data(int k) {
    auto& slot = charts_[static_cast<std::size_t>(k)];
    if (!slot) {
      Chart ch;
      ch.c = chart_restriction(f_, k);
      for (std::size_t m = 0; m < 5; ++m) {
        ch.cu[m] = ch.c[m].derivative(Var::u);
        ch.cv[m] = ch.c[m].derivative(Var::v);
      }
      slot = std::move(ch);
    }
    return *slot;
  }

  // Unknowns: u, v, the three coefficients of q, alpha; six equations.
  std::pair<ProjLine, std::array<Complex, 3>> newton(const ProjLine& start, int k) {
    const Chart& ch = chart_data(k);
    const auto [i, j, kk] = chart_indices(k);
    const Vec3& l0 = start.coords();
    Complex u = l0[i] / l0[kk], v = l0[j] / l0[kk];

    std::array<Complex, 5> c;
    auto eval_c = [&] {
      for (std::size_t m = 0; m < 5; ++m) c[m] = ch.c[m](u, v);
    };
    eval_c();

    std::array<Complex, 3> q = initial_square_root(c);
    Complex alpha = best_alpha(c, q);
    // Scale of q is fixed by w . q = w . q_init with a fixed generic w, so no
    // coefficient of q has to stay away from zero.
    const std::array<Complex, 3> w{Complex(0.8, 0.3), Complex(-0.4, 0.7), Complex(0.6, -0.5)};
    const Complex norm_target = w[0] * q[0] + w[1] * q[1] + w[2] * q[2];

    auto square = [&] {
      return std::array<Complex, 5>{q[0] * q[0], 2.0 * q[0] * q[1], q[1] * q[1] + 2.0 * q[0] * q[2],
                                    2.0 * q[1] * q[2], q[2] * q[2]};
    };
    Eigen::Matrix<Complex, 6, 1> e;
    auto residual = [&] {
      const auto s = square();
      double cmax = 0.0;
      Eigen::Matrix<Complex, 5, 1> core;
      for (std::size_t m = 0; m < 5; ++m) {
        core(static_cast<Eigen::Index>(m)) = c[m] - alpha * s[m];
        e(static_cast<Eigen::Index>(m)) = core(static_cast<Eigen::Index>(m));
        cmax = std::max(cmax, std::abs(c[m]));
      }
      e(5) = w[0] * q[0] + w[1] * q[1] + w[2] * q[2] - norm_target;
      return cmax > 0.0 ? core.norm() / cmax : std::numeric_limits<double>::infinity();
    };

    double res = residual();
    for (int it = 0; it < kPolishIterations; ++it) {
      if (!std::isfinite(res)) break;
      Eigen::Matrix<Complex, 6, 6> jac = Eigen::Matrix<Complex, 6, 6>::Zero();
      const auto s = square();
      // d(q^2)/dq_r as coefficient vectors
      const std::array<std::array<Complex, 5>, 3> ds{{{2.0 * q[0], 2.0 * q[1], 2.0 * q[2], 0.0, 0.0},
                                                      {0.0, 2.0 * q[0], 2.0 * q[1], 2.0 * q[2], 0.0},
                                                      {0.0, 0.0, 2.0 * q[0], 2.0 * q[1], 2.0 * q[2]}}};
      for (std::size_t m = 0; m < 5; ++m) {
        const auto row = static_cast<Eigen::Index>(m);
        jac(row, 0) = ch.cu[m](u, v);
        jac(row, 1) = ch.cv[m](u, v);
        for (std::size_t r = 0; r < 3; ++r) jac(row, static_cast<Eigen::Index>(2 + r)) = -alpha * ds[r][m];
        jac(row, 5) = -s[m];
      }
      for (std::size_t r = 0; r < 3; ++r) jac(5, static_cast<Eigen::Index>(2 + r)) = w[r];
      const Eigen::Matrix<Complex, 6, 1> step = jac.colPivHouseholderQr().solve(e);
      if (!step.allFinite()) break;
      u -= step(0);
      v -= step(1);
      for (std::size_t r = 0; r < 3; ++r) q[r] -= step(static_cast<Eigen::Index>(2 + r));
      alpha -= step(5);
      eval_c();
      res = residual();
      const double len = std::abs(step(0)) + std::abs(step(1));
      if (len <= 1e-15 * (1.0 + std::abs(u) + std::abs(v)) && res <= cfg_.accept_tol) break;
    }
    if (!(res <= cfg_.accept_tol)) throw NonConvergence("bitangent polish residual above tolerance");
    last_residual_ = res;

    Vec3 l{};
    l[i] = u;
    l[j] = v;
    l[kk] = 1.0;
    return {ProjLine(l), q};
  }

  Bitangent finish(const ProjLine& line, int solved_chart, std::array<Complex, 3> q) {
    // Express q in the chart parametrization of the canonical line. The
    // solved chart is the pivot chart or the line is re-solved there; in
    // the rare pass-limit case recompute q from the restriction.
    const int chart = static_cast<int>(canonical_pivot(line.coords()));
    const LineParametrization par = LineParametrization::chart(line, chart);
    if (chart != solved_chart) {
      const BinaryQuartic r = restrict_to_line(f_, par);
      const auto& c = r.c;
      if (std::abs(c[4]) >= std::abs(c[0])) {
        q = {0.0, c[3] / (2.0 * c[4]), 1.0};
        q[0] = (c[2] / c[4] - q[1] * q[1]) / 2.0;
      } else {
        q = {1.0, c[1] / (2.0 * c[0]), 0.0};
        q[2] = (c[2] / c[0] - q[1] * q[1]) / 2.0;
      }
    }

    const double qmax = std::max({std::abs(q[0]), std::abs(q[1]), std::abs(q[2])});
    const Complex disc = q[1] * q[1] - 4.0 * q[0] * q[2];
    const bool hyperflex = std::abs(disc) / (qmax * qmax) < cfg_.hyperflex_tol;

    // Homogeneous roots (t : s) of q2 t^2 + q1 t s + q0 s^2.
    const Complex w = std::sqrt(disc);
    const Complex dm = -q[1] - w, dp = -q[1] + w;
    const Complex d = std::abs(dm) >= std::abs(dp) ? dm : dp;
    std::array<std::pair<Complex, Complex>, 2> roots;
    if (d == Complex{}) {
      // q1 = 0 and q0 q2 = 0: a double root at t = 0 or at infinity
      const std::pair<Complex, Complex> r = std::abs(q[2]) >= std::abs(q[0]) ? std::pair<Complex, Complex>{0.0, 1.0}
                                                                            : std::pair<Complex, Complex>{1.0, 0.0};
      roots = {r, r};
    } else {
      roots = {std::pair<Complex, Complex>{d, 2.0 * q[2]}, std::pair<Complex, Complex>{2.0 * q[0], d}};
    }
    auto point = [&](const std::pair<Complex, Complex>& ts) {
      Vec3 p{};
      for (std::size_t r = 0; r < 3; ++r) p[r] = ts.first * par.direction[r] + ts.second * par.base[r];
      return ProjPoint(p);
    };
    std::array<ProjPoint, 2> pts{point(roots[0]), point(roots[1])};
    for (const ProjPoint& p : pts) {
      const Vec3 g = f_.gradient(p.coords());
      const double gn = std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
      if (gn < kGradientTol) throw SingularCurve("gradient vanishes at a tangency point");
    }

    return Bitangent{line,
                     UniPoly({q[0], q[1], q[2]}),
                     chart,
                     pts,
                     last_residual_,
                     line_is_real(line, cfg_.real_tol),
                     hyperflex};
  }

  const TernaryQuartic& f_;
  const SolverConfig& cfg_;
  std::array<std::optional<Chart>, 3> charts_;
  double last_residual_ = 0.0;
};

}  // namespace

Bitangent polish(const TernaryQuartic& f, const ProjLine& candidate, const SolverConfig& cfg) {
  Polisher p(f, cfg);
  return p.run(candidate);
}

// ---------------------------------------------------------------- elimination

namespace {

Eigen::Matrix3cd random_unitary(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix3cd a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = Complex(n(rng), n(rng));
  Eigen::HouseholderQR<Eigen::Matrix3cd> qr(a);
  return qr.householderQ();
}

// Sample circle radius kept away from the roots of c4(v), where the division
// by c4^8 would amplify rounding.
double pick_radius(const UniPoly& c4) {
  std::vector<Complex> roots;
  if (c4.degree() >= 1) roots = roots_all(c4, 1e-8);
  double best = 1.0, best_gap = -1.0;
  for (double r : {1.0, 0.85, 1.2, 0.7, 1.45, 0.55, 1.75}) {
    double gap = std::numeric_limits<double>::infinity();
    for (const Complex& z : roots) gap = std::min(gap, std::abs(std::abs(z) - r) / r);
    if (gap > 0.1) return r;
    if (gap > best_gap) {
      best_gap = gap;
      best = r;
    }
  }
  return best;
}

struct Candidate {
  Vec3 line;  // original coordinates
  int chart;
};

// Candidates from one chart of the transformed quartic, or nullopt if the
// eliminant fails its degree check.
std::optional<std::vector<Candidate>> chart_candidates(const TernaryQuartic& g, const Eigen::Matrix3cd& back, int k,
                                                       const SolverConfig& cfg, ChartDiagnostics& diag) {
  const auto c = chart_restriction(g, k);
  const BiPoly g1 = c[3] * c[3] * c[3] - c[4] * c[3] * c[2] * BiPoly::constant(4.0) +
                    c[4] * c[4] * c[1] * BiPoly::constant(8.0);
  const BiPoly h = c[4] * c[2] * BiPoly::constant(4.0) - c[3] * c[3];
  const BiPoly g2 = h * h - c[4] * c[4] * c[4] * c[0] * BiPoly::constant(64.0);
  if (g1.is_zero() || g2.is_zero()) throw DegenerateElimination("perfect-square conditions vanish identically");

  const UniPoly c4 = c[4].at(Var::u, 0.0);
  const double radius = pick_radius(c4);
  std::vector<Complex> values(kSamples);
  for (std::size_t s = 0; s < kSamples; ++s) {
    const Complex w = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(kSamples));
    const Complex d = sylvester_determinant_at(g1, g2, Var::u, w);
    const Complex c4w = c4(w);
    Complex c4pow = 1.0;
    for (int e = 0; e < 8; ++e) c4pow *= c4w;
    values[s] = d / c4pow;
  }
  const UniPoly full = interpolate_on_circle(values, radius);
  double head = 0.0, tail = 0.0, rpow = 1.0;
  std::vector<Complex> coeffs(kBitangentCount + 1);
  for (std::size_t d = 0; d < full.coeffs().size(); ++d) {
    const double mag = std::abs(full.coeffs()[d]) * rpow;
    if (d <= static_cast<std::size_t>(kBitangentCount)) {
      head = std::max(head, mag);
      coeffs[d] = full.coeffs()[d];
    } else {
      tail = std::max(tail, mag);
    }
    rpow *= radius;
  }
  diag.tail_ratio = head > 0.0 ? tail / head : std::numeric_limits<double>::infinity();
  if (!(diag.tail_ratio < kTailTol)) return std::nullopt;

  const UniPoly b = UniPoly(coeffs).trimmed(1e-14);
  diag.degree = b.degree();
  if (b.degree() < 1) return std::nullopt;
  RootOptions ropts;
  ropts.max_iter = cfg.max_iter;
  ropts.seed = cfg.seed;
  std::vector<Complex> vroots;
  try {
    vroots = roots_all(b, 1e-9, ropts);
  } catch (const NonConvergence&) {
    return std::nullopt;
  }

  const auto [i, j, kk] = chart_indices(k);
  std::vector<Candidate> out;
  for (const Complex& v0 : vroots) {
    const UniPoly cubic = g1.at(Var::v, v0).trimmed(1e-12);
    if (cubic.degree() < 1) continue;
    std::vector<Complex> us;
    try {
      us = roots_all(cubic, 1e-8, ropts);
    } catch (const NonConvergence&) {
      continue;
    }
    const UniPoly quartic = g2.at(Var::v, v0);
    auto best = std::min_element(us.begin(), us.end(), [&](Complex a, Complex b2) {
      return std::abs(quartic(a)) / std::pow(std::max(1.0, std::abs(a)), 4) <
             std::abs(quartic(b2)) / std::pow(std::max(1.0, std::abs(b2)), 4);
    });
    Eigen::Vector3cd lp;
    lp(static_cast<Eigen::Index>(i)) = *best;
    lp(static_cast<Eigen::Index>(j)) = v0;
    lp(static_cast<Eigen::Index>(kk)) = 1.0;
    const Eigen::Vector3cd l = back * lp;
    if (!l.allFinite()) continue;
    out.push_back({{l(0), l(1), l(2)}, k});
  }
  diag.candidates = out.size();
  return out;
}

bool line_less(const Bitangent& a, const Bitangent& b) {
  auto key = [](const Bitangent& x) {
    std::array<long long, 6> k{};
    for (std::size_t r = 0; r < 3; ++r) {
      k[2 * r] = std::llround(x.line[r].real() * 1e6);
      k[2 * r + 1] = std::llround(x.line[r].imag() * 1e6);
    }
    return k;
  };
  return key(a) > key(b);
}

}  // namespace

BitangentSet solve_all(const TernaryQuartic& f, const SolverConfig& cfg) {
  SolverDiagnostics diag;
  std::size_t last_count = 0;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    diag = SolverDiagnostics{};
    diag.seed = cfg.seed + static_cast<std::uint64_t>(attempt);
    diag.attempts = attempt + 1;

    // f'(x) = f(M x); a line l' of f' corresponds to l = M^-T l'.
    const Eigen::Matrix3cd m = random_unitary(diag.seed);
    const TernaryQuartic g(substitute(f.coeffs(), m));
    const Eigen::Matrix3cd back = m.inverse().transpose();

    std::vector<Candidate> candidates;
    bool frame_ok = true;
    for (int k = 0; k < 3; ++k) {
      if (!cfg.charts[static_cast<std::size_t>(k)]) continue;
      ChartDiagnostics cd;
      cd.pinned = k;
      auto got = chart_candidates(g, back, k, cfg, cd);
      diag.charts.push_back(cd);
      if (!got) {
        frame_ok = false;
        break;
      }
      candidates.insert(candidates.end(), got->begin(), got->end());
    }
    if (!frame_ok) continue;

    Polisher polisher(f, cfg);
    std::vector<Bitangent> found;
    for (const Candidate& cand : candidates) {
      auto& cd = *std::find_if(diag.charts.begin(), diag.charts.end(), [&](const ChartDiagnostics& x) { return x.pinned == cand.chart; });
      std::optional<Bitangent> b;
      try {
        b = polisher.run(ProjLine(cand.line));
      } catch (const NonConvergence&) {
        ++cd.rejected;
        continue;
      } catch (const std::invalid_argument&) {
        ++cd.rejected;
        continue;
      }
      ++cd.accepted;
      auto same = std::find_if(found.begin(), found.end(), [&](const Bitangent& x) { return x.line.matches(b->line, cfg.match_tol); });
      if (same == found.end()) {
        found.push_back(std::move(*b));
      } else {
        ++diag.duplicates;
        if (b->residual < same->residual) *same = std::move(*b);
      }
    }

    last_count = found.size();
    if (found.size() != static_cast<std::size_t>(kBitangentCount)) continue;

    std::sort(found.begin(), found.end(), line_less);
    for (const Bitangent& b : found) {
      diag.max_residual = std::max(diag.max_residual, b.residual);
      if (b.is_hyperflex) ++diag.hyperflexes;
    }
    return BitangentSet{std::move(found), f, diag};
  }
  throw WrongCount(last_count, diag.to_json());
}

}  // namespace bitan
