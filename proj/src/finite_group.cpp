#include "relhyp/finite_group.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "relhyp/error.hpp"

namespace relhyp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_order: return "invalid-order";
    case ErrorKind::invalid_element: return "invalid-element";
    case ErrorKind::shape: return "shape-error";
    case ErrorKind::parent_mismatch: return "parent-mismatch";
    case ErrorKind::invalid_word: return "invalid-word";
    case ErrorKind::basepoint_mismatch: return "basepoint-mismatch";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::insufficient_radius: return "insufficient-radius";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::missing_alpha: return "missing-alpha";
    case ErrorKind::non_simplicial: return "non-simplicial";
    case ErrorKind::predicate_failure: return "predicate-failure";
    case ErrorKind::schema: return "schema-error";
  }
  return "error";
}

namespace {

constexpr int kExhaustiveAssociativity = 256;
constexpr int kSampledTriples = 10000;

bool is_permutation(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != static_cast<Elem>(i)) return false;
  }
  return true;
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<Elem>> table,
                         std::vector<std::string> names)
    : order_(static_cast<int>(table.size())), identity_(-1),
      names_(std::move(names)) {
  if (order_ == 0) throw Error(ErrorKind::invalid_order, "empty table");
  table_.reserve(static_cast<std::size_t>(order_) * order_);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != order_) {
      throw Error(ErrorKind::shape, "table is not square");
    }
    for (Elem x : row) {
      if (x < 0 || x >= order_) {
        throw Error(ErrorKind::invalid_element, "table entry out of range");
      }
      table_.push_back(x);
    }
  }
  for (int g = 0; g < order_; ++g) {
    std::vector<Elem> col(order_);
    for (int h = 0; h < order_; ++h) col[h] = mul(h, g);
    if (!is_permutation(table[g]) || !is_permutation(col)) {
      throw Error(ErrorKind::shape, "table is not a Latin square");
    }
  }
  for (int e = 0; e < order_ && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < order_ && ok; ++g) {
      ok = mul(e, g) == g && mul(g, e) == g;
    }
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw Error(ErrorKind::shape, "no identity element");

  auto assoc = [&](Elem a, Elem b, Elem c) {
    return mul(mul(a, b), c) == mul(a, mul(b, c));
  };
  if (order_ <= kExhaustiveAssociativity) {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c)
          if (!assoc(a, b, c)) {
            throw Error(ErrorKind::shape, "multiplication is not associative");
          }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, order_ - 1);
    for (int i = 0; i < kSampledTriples; ++i) {
      if (!assoc(pick(rng), pick(rng), pick(rng))) {
        throw Error(ErrorKind::shape, "multiplication is not associative");
      }
    }
  }

  inverse_.assign(order_, -1);
  for (int g = 0; g < order_; ++g)
    for (int h = 0; h < order_; ++h)
      if (mul(g, h) == identity_) inverse_[g] = h;

  if (!names_.empty() && static_cast<int>(names_.size()) != order_) {
    throw Error(ErrorKind::shape, "names length differs from order");
  }
}

int FiniteGroup::element_order(Elem g) const {
  int n = 1;
  for (Elem x = g; x != identity_; x = mul(x, g)) ++n;
  return n;
}

std::string FiniteGroup::name(Elem g) const {
  if (!names_.empty()) return names_[g];
  return std::to_string(g);
}

std::vector<std::vector<Elem>> FiniteGroup::table() const {
  std::vector<std::vector<Elem>> out(order_, std::vector<Elem>(order_));
  for (int g = 0; g < order_; ++g)
    for (int h = 0; h < order_; ++h) out[g][h] = mul(g, h);
  return out;
}

FiniteGroup make_cyclic(int n) {
  if (n <= 0) throw Error(ErrorKind::invalid_order, "cyclic order must be >= 1");
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return FiniteGroup(std::move(t));
}

FiniteGroup make_symmetric(int n) {
  if (n <= 0) throw Error(ErrorKind::invalid_order, "degree must be >= 1");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<Elem>(
        std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
  std::vector<std::string> names(m);
  for (int a = 0; a < m; ++a) {
    std::string s = "(";
    for (int i = 0; i < n; ++i) s += std::to_string(perms[a][i]);
    names[a] = s + ")";
    for (int b = 0; b < m; ++b) {
      // (a*b)(i) = a(b(i)): apply b first.
      std::vector<int> q(n);
      for (int i = 0; i < n; ++i) q[i] = perms[a][perms[b][i]];
      t[a][b] = index_of(q);
    }
  }
  return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup make_dihedral(int n) {
  if (n <= 0) throw Error(ErrorKind::invalid_order, "dihedral n must be >= 1");
  const int m = 2 * n;
  std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
  std::vector<std::string> names(m);
  // Element (f, i) = s^f r^i; r^i s = s r^-i.
  for (int a = 0; a < m; ++a) {
    const int fa = a / n, ia = a % n;
    names[a] = (fa ? std::string("s") : std::string()) + "r" + std::to_string(ia);
    for (int b = 0; b < m; ++b) {
      const int fb = b / n, ib = b % n;
      const int f = (fa + fb) % 2;
      const int i = ((fb ? -ia : ia) + ib + 2 * n) % n;
      t[a][b] = f * n + i;
    }
  }
  return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int m = a.order() * b.order();
  std::vector<std::vector<Elem>> t(m, std::vector<Elem>(m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const Elem p = a.mul(x / b.order(), y / b.order());
      const Elem q = b.mul(x % b.order(), y % b.order());
      t[x][y] = p * b.order() + q;
    }
  return FiniteGroup(std::move(t));
}

bool Subgroup::contains(Elem g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  return Subgroup{&g, {g.identity()}};
}

Subgroup whole_group(const FiniteGroup& g) {
  Subgroup s{&g, std::vector<Elem>(g.order())};
  std::iota(s.elements.begin(), s.elements.end(), 0);
  return s;
}

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> gens) {
  for (Elem x : gens) {
    if (!g.contains(x)) {
      throw Error(ErrorKind::invalid_element,
                  "generator " + std::to_string(x) + " outside group");
    }
  }
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> frontier{g.identity()};
  seen[g.identity()] = 1;
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem x : frontier)
      for (Elem s : gens) {
        const Elem y = g.mul(x, s);
        if (!seen[y]) {
          seen[y] = 1;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  Subgroup out{&g, {}};
  for (int x = 0; x < g.order(); ++x)
    if (seen[x]) out.elements.push_back(x);
  return out;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup s{&g, std::move(elements)};
  for (Elem x : s.elements) {
    if (!g.contains(x)) throw Error(ErrorKind::invalid_element, "element outside group");
  }
  if (!s.contains(g.identity())) {
    throw Error(ErrorKind::invalid_argument, "subset misses the identity");
  }
  for (Elem x : s.elements) {
    if (!s.contains(g.inv(x))) {
      throw Error(ErrorKind::invalid_argument, "subset not closed under inverse");
    }
    for (Elem y : s.elements)
      if (!s.contains(g.mul(x, y))) {
        throw Error(ErrorKind::invalid_argument, "subset not closed under product");
      }
  }
  return s;
}

namespace {

std::vector<std::vector<Elem>> cosets(const Subgroup& h, bool left) {
  const FiniteGroup& g = *h.parent;
  std::vector<char> done(g.order(), 0);
  std::vector<std::vector<Elem>> out;
  auto add = [&](Elem x) {
    std::vector<Elem> c;
    for (Elem k : h.elements) c.push_back(left ? g.mul(x, k) : g.mul(k, x));
    std::sort(c.begin(), c.end());
    for (Elem y : c) done[y] = 1;
    out.push_back(std::move(c));
  };
  add(g.identity());
  for (int x = 0; x < g.order(); ++x)
    if (!done[x]) add(x);
  return out;
}

}  // namespace

std::vector<std::vector<Elem>> left_cosets(const Subgroup& h) {
  return cosets(h, true);
}

std::vector<std::vector<Elem>> right_cosets(const Subgroup& h) {
  return cosets(h, false);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (a.parent != b.parent && !(*a.parent == *b.parent)) {
    throw Error(ErrorKind::parent_mismatch, "subgroups of different groups");
  }
  std::vector<Elem> common;
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(),
                        b.elements.end(), std::back_inserter(common));
  return make_subgroup(*a.parent, std::move(common));
}

Subgroup conjugate(const Subgroup& h, Elem g) {
  const FiniteGroup& p = *h.parent;
  std::vector<Elem> out;
  for (Elem x : h.elements) out.push_back(p.mul(p.mul(g, x), p.inv(g)));
  std::sort(out.begin(), out.end());
  return Subgroup{&p, std::move(out)};
}

bool GroupHom::injective() const {
  std::set<Elem> s(map.begin(), map.end());
  return s.size() == map.size();
}

Subgroup GroupHom::image() const {
  return make_subgroup(*target, map);
}

std::optional<Elem> GroupHom::preimage(Elem t) const {
  for (std::size_t g = 0; g < map.size(); ++g)
    if (map[g] == t) return static_cast<Elem>(g);
  return std::nullopt;
}

HomCheck check_hom(const GroupHom& h) {
  if (!h.source || !h.target ||
      static_cast<int>(h.map.size()) != h.source->order()) {
    throw Error(ErrorKind::shape, "map length differs from source order");
  }
  for (Elem x : h.map) {
    if (!h.target->contains(x)) {
      throw Error(ErrorKind::invalid_element, "map value outside target");
    }
  }
  HomCheck out;
  out.identity_ok = h.map[h.source->identity()] == h.target->identity();
  const FiniteGroup& s = *h.source;
  const FiniteGroup& t = *h.target;
  for (int g = 0; g < s.order(); ++g)
    for (int k = 0; k < s.order(); ++k)
      if (h.map[s.mul(g, k)] != t.mul(h.map[g], h.map[k])) {
        out.ok = false;
        out.violation = std::make_pair(g, k);
        return out;
      }
  out.ok = out.ok && out.identity_ok;
  return out;
}

}  // namespace relhyp
