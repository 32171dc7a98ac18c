#include "bitan/grp.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "bitan/errors.hpp"

namespace bitan {

bool Subgroup::contains(std::size_t i) const { return std::binary_search(members.begin(), members.end(), i); }

std::string IsoLabel::str() const {
  switch (kind) {
    case Kind::cyclic:
      return "C" + std::to_string(order);
    case Kind::klein:
      return "K4";
    case Kind::symmetric3:
      return "S3";
    case Kind::dihedral8:
      return "D8";
    case Kind::other:
      break;
  }
  return "other(" + std::to_string(order) + (abelian ? ",abelian)" : ",nonabelian)");
}

namespace {

// Nearest element and its distance; ties are impossible once the ambiguity
// guard has passed.
std::pair<std::size_t, double> nearest(const std::vector<ProjTransform>& elems, const ProjTransform& g) {
  std::size_t best = FiniteProjGroup::npos;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const double d = elems[i].distance(g);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return {best, dist};
}

}  // namespace

FiniteProjGroup FiniteProjGroup::closure(std::span<const ProjTransform> gens, std::size_t cap, double match_tol) {
  FiniteProjGroup g;
  g.tol_ = match_tol;
  g.elements_.push_back(ProjTransform());

  auto locate_or_add = [&](const ProjTransform& x) -> std::size_t {
    const auto [idx, d] = nearest(g.elements_, x);
    if (d < match_tol) return idx;
    if (d < 10.0 * match_tol) throw AmbiguousMatch("product within the separation guard of an existing element");
    if (g.elements_.size() >= cap) throw CapExceeded(cap);
    g.elements_.push_back(x);
    return g.elements_.size() - 1;
  };

  for (const ProjTransform& x : gens) g.gens_.push_back(locate_or_add(x));
  for (std::size_t head = 0; head < g.elements_.size(); ++head)
    for (std::size_t k : g.gens_) {
      const ProjTransform prod = g.elements_[head] * g.elements_[k];
      locate_or_add(prod);
    }

  const std::size_t n = g.elements_.size();
  g.table_.assign(n * n, npos);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto [idx, d] = nearest(g.elements_, g.elements_[i] * g.elements_[j]);
      if (d >= match_tol) throw AmbiguousMatch("closure is not closed under multiplication");
      g.table_[i * n + j] = idx;
    }
  g.inv_.assign(n, npos);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.table_[i * n + j] == 0) g.inv_[i] = j;

  g.class_of_.assign(n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.class_of_[i] != npos) continue;
    std::vector<std::size_t> cls;
    for (std::size_t x = 0; x < n; ++x) cls.push_back(g.conjugate(x, i));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (std::size_t m : cls) g.class_of_[m] = g.classes_.size();
    g.classes_.push_back(std::move(cls));
  }
  return g;
}

std::size_t FiniteProjGroup::find(const ProjTransform& x) const {
  const auto [idx, d] = nearest(elements_, x);
  return d < tol_ ? idx : npos;
}

std::size_t FiniteProjGroup::element_order(std::size_t i) const {
  std::size_t k = 1;
  for (std::size_t p = i; p != 0; p = mul(p, i)) ++k;
  return k;
}

bool FiniteProjGroup::is_abelian() const { return is_central(whole()); }

Subgroup FiniteProjGroup::whole() const {
  Subgroup h;
  h.members.resize(order());
  std::iota(h.members.begin(), h.members.end(), std::size_t{0});
  return h;
}

Subgroup FiniteProjGroup::center() const {
  Subgroup z;
  for (std::size_t i = 0; i < order(); ++i) {
    bool central = true;
    for (std::size_t j = 0; j < order() && central; ++j) central = mul(i, j) == mul(j, i);
    if (central) z.members.push_back(i);
  }
  return z;
}

Subgroup FiniteProjGroup::generated_by(std::span<const std::size_t> gens) const {
  std::vector<char> in(order(), 0);
  std::vector<std::size_t> list{0};
  in[0] = 1;
  for (std::size_t head = 0; head < list.size(); ++head)
    for (std::size_t g : gens) {
      const std::size_t p = mul(list[head], g);
      if (!in[p]) {
        in[p] = 1;
        list.push_back(p);
      }
    }
  std::sort(list.begin(), list.end());
  return Subgroup{std::move(list)};
}

bool FiniteProjGroup::is_subgroup(const Subgroup& h) const {
  if (!h.contains(0)) return false;
  for (std::size_t a : h.members)
    for (std::size_t b : h.members)
      if (!h.contains(mul(a, b))) return false;
  return true;
}

Subgroup FiniteProjGroup::conjugate(const Subgroup& h, std::size_t g) const {
  Subgroup out;
  for (std::size_t m : h.members) out.members.push_back(conjugate(g, m));
  std::sort(out.members.begin(), out.members.end());
  return out;
}

bool FiniteProjGroup::subgroups_conjugate(const Subgroup& a, const Subgroup& b) const {
  if (a.order() != b.order()) return false;
  for (std::size_t g = 0; g < order(); ++g)
    if (conjugate(a, g) == b) return true;
  return false;
}

bool FiniteProjGroup::is_central(const Subgroup& h) const {
  for (std::size_t m : h.members)
    for (std::size_t g = 0; g < order(); ++g)
      if (mul(m, g) != mul(g, m)) return false;
  return true;
}

IsoLabel FiniteProjGroup::iso_label(const Subgroup& h) const {
  IsoLabel label;
  label.order = h.order();
  label.abelian = true;
  for (std::size_t a : h.members)
    for (std::size_t b : h.members)
      if (mul(a, b) != mul(b, a)) label.abelian = false;

  std::size_t max_order = 1, order2 = 0, order4 = 0;
  for (std::size_t m : h.members) {
    const std::size_t o = element_order(m);
    max_order = std::max(max_order, o);
    if (o == 2) ++order2;
    if (o == 4) ++order4;
  }
  if (max_order == h.order()) label.kind = IsoLabel::Kind::cyclic;
  else if (h.order() == 4 && order2 == 3) label.kind = IsoLabel::Kind::klein;
  else if (h.order() == 6 && !label.abelian) label.kind = IsoLabel::Kind::symmetric3;
  else if (h.order() == 8 && !label.abelian && order4 == 2) label.kind = IsoLabel::Kind::dihedral8;
  else label.kind = IsoLabel::Kind::other;
  return label;
}

std::vector<Subgroup> FiniteProjGroup::subgroups_of_order(std::size_t n) const {
  std::vector<Subgroup> found;
  if (order() % n != 0) return found;
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = a; b < order(); ++b) {
      const std::array<std::size_t, 2> gens{a, b};
      Subgroup h = generated_by(gens);
      if (h.order() == n) found.push_back(std::move(h));
    }
  std::sort(found.begin(), found.end(), [](const Subgroup& x, const Subgroup& y) { return x.members < y.members; });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

Subgroup stabilizer(const FiniteProjGroup& g, const ProjLine& line) {
  Subgroup h;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const double d = act_on_line(g.element(i), line).distance(line);
    if (d < g.match_tol()) h.members.push_back(i);
    else if (d < 10.0 * g.match_tol()) throw AmbiguousMatch("line image within the separation guard");
  }
  return h;
}

}  // namespace bitan
