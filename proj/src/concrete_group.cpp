#include "relhyp/concrete_group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "relhyp/error.hpp"

namespace relhyp {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ e.size();
  for (auto x : e) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string ConcreteGroup::format(const Element& a) const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

bool ConcreteGroup::equal(const Element& a, const Element& b) const {
  if (has_canonical()) return canonical(a) == canonical(b);
  return a == b;
}

SubgroupHandle finite_handle(const ConcretePtr& g, std::string name, std::vector<Element> elems) {
  SubgroupHandle h;
  h.name = std::move(name);
  if (g->has_canonical()) {
    std::set<Element> canon;
    for (auto& e : elems) canon.insert(g->canonical(e));
    h.contains = [g, canon](const Element& x) { return canon.count(g->canonical(x)) > 0; };
    h.coset_key = [g, elems](const Element& x) {
      Element best;
      bool first = true;
      for (const auto& k : elems) {
        Element c = g->canonical(g->mul(x, k));
        if (first || c < best) best = std::move(c);
        first = false;
      }
      return best;
    };
  } else {
    h.contains = [g, elems](const Element& x) {
      return std::any_of(elems.begin(), elems.end(), [&](const Element& k) { return g->equal(x, k); });
    };
  }
  h.elements = std::move(elems);
  return h;
}

SubgroupHandle trivial_handle(const ConcretePtr& g) {
  return finite_handle(g, "1", {g->identity()});
}

std::vector<Element> enumerate_subgroup(const ConcreteGroup& g, const std::vector<Element>& gens,
                                        std::size_t cap) {
  std::vector<Element> out{g.identity()};
  std::set<Element> seen;
  if (g.has_canonical()) seen.insert(g.canonical(g.identity()));
  auto known = [&](const Element& x) {
    if (g.has_canonical()) return seen.count(g.canonical(x)) > 0;
    return std::any_of(out.begin(), out.end(), [&](const Element& y) { return g.equal(x, y); });
  };
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& s : gens) {
      Element x = g.mul(out[i], s);
      if (known(x)) continue;
      if (out.size() >= cap) throw Error(ErrorKind::cap_exceeded, "subgroup enumeration exceeds cap");
      if (g.has_canonical()) {
        x = g.canonical(x);
        seen.insert(x);
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

FiniteConcrete::FiniteConcrete(std::shared_ptr<const FiniteGroup> g, std::vector<Elem> gens)
    : g_(std::move(g)), gens_(std::move(gens)) {
  for (Elem x : gens_) {
    if (!g_->contains(x)) throw Error(ErrorKind::invalid_element, "generator out of range");
  }
}

std::string FiniteConcrete::name() const { return "finite(" + std::to_string(g_->order()) + ")"; }

Element FiniteConcrete::mul(const Element& a, const Element& b) const {
  return {g_->mul(static_cast<Elem>(a[0]), static_cast<Elem>(b[0]))};
}

Element FiniteConcrete::inv(const Element& a) const { return {g_->inv(static_cast<Elem>(a[0]))}; }

std::vector<Element> FiniteConcrete::generators() const {
  std::vector<Element> out;
  for (Elem x : gens_) out.push_back({x});
  return out;
}

std::string FiniteConcrete::format(const Element& a) const { return g_->name(static_cast<Elem>(a[0])); }

LatticeGroup::LatticeGroup(int dim) : dim_(dim) {
  if (dim < 1) throw Error(ErrorKind::invalid_argument, "lattice dimension must be positive");
}

Element LatticeGroup::mul(const Element& a, const Element& b) const {
  Element c(dim_);
  for (int i = 0; i < dim_; ++i) c[i] = a[i] + b[i];
  return c;
}

Element LatticeGroup::inv(const Element& a) const {
  Element c(dim_);
  for (int i = 0; i < dim_; ++i) c[i] = -a[i];
  return c;
}

std::vector<Element> LatticeGroup::generators() const {
  std::vector<Element> out;
  for (int i = 0; i < dim_; ++i) {
    Element e(dim_, 0);
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

std::string LatticeGroup::format(const Element& a) const { return ConcreteGroup::format(a); }

SubgroupHandle lattice_axis_handle(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw Error(ErrorKind::invalid_argument, "axis out of range");
  SubgroupHandle h;
  h.name = "<e" + std::to_string(axis) + ">";
  h.contains = [dim, axis](const Element& x) {
    for (int i = 0; i < dim; ++i)
      if (i != axis && x[i] != 0) return false;
    return true;
  };
  h.coset_key = [axis](const Element& x) {
    Element k = x;
    k[axis] = 0;
    return k;
  };
  return h;
}

Element Sl2zGroup::mul(const Element& x, const Element& y) const {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

Element Sl2zGroup::inv(const Element& x) const { return {x[3], -x[1], -x[2], x[0]}; }

std::vector<Element> Sl2zGroup::generators() const { return {gen_a(), gen_b()}; }

std::string Sl2zGroup::format(const Element& x) const {
  std::ostringstream os;
  os << "[[" << x[0] << "," << x[1] << "],[" << x[2] << "," << x[3] << "]]";
  return os.str();
}

GogGroup::GogGroup(std::shared_ptr<const GraphOfGroups> gog, unsigned seed)
    : gog_(std::move(gog)), t_(*gog_, seed) {}

Element GogGroup::encode(const GroupWord& w) const {
  if (w.base != 0 || !is_loop(w, *gog_)) throw Error(ErrorKind::invalid_word, "pi1 elements are loops at vertex 0");
  Element e{static_cast<std::int64_t>(w.edges.size())};
  e.insert(e.end(), w.elems.begin(), w.elems.end());
  e.insert(e.end(), w.edges.begin(), w.edges.end());
  return e;
}

GroupWord GogGroup::decode(const Element& e) const {
  const auto n = static_cast<std::size_t>(e.at(0));
  if (e.size() != 2 * n + 2) throw Error(ErrorKind::invalid_word, "malformed encoded word");
  GroupWord w;
  w.base = 0;
  w.elems.assign(e.begin() + 1, e.begin() + 2 + n);
  w.edges.assign(e.begin() + 2 + n, e.end());
  return w;
}

Element GogGroup::identity() const { return encode(identity_word(*gog_, 0)); }

Element GogGroup::mul(const Element& a, const Element& b) const {
  return encode(reduce(concat(decode(a), decode(b), *gog_), *gog_, t_).word);
}

Element GogGroup::inv(const Element& a) const {
  return encode(reduce(inverse(decode(a), *gog_), *gog_, t_).word);
}

std::vector<Element> GogGroup::vertex_group_conjugate(int v) const {
  const GroupWord q = tree_path_word(*gog_, v);
  const GroupWord qi = inverse(q, *gog_);
  std::vector<Element> out;
  for (Elem h = 0; h < gog_->vertex_group(v).order(); ++h) {
    out.push_back(encode(reduce(concat(concat(q, element_word(*gog_, v, h), *gog_), qi, *gog_), *gog_, t_).word));
  }
  return out;
}

Element GogGroup::edge_element(int f) const {
  GroupWord w = tree_path_word(*gog_, gog_->origin(f));
  w.edges.push_back(f);
  w.elems.push_back(0);
  w = concat(w, inverse(tree_path_word(*gog_, gog_->terminus(f)), *gog_), *gog_);
  return encode(reduce(w, *gog_, t_).word);
}

std::vector<Element> GogGroup::generators() const {
  std::vector<Element> out;
  for (int v = 0; v < gog_->num_vertices(); ++v) {
    auto conj = vertex_group_conjugate(v);
    out.insert(out.end(), conj.begin() + 1, conj.end());
  }
  for (int f = 0; f < gog_->num_edges(); ++f) {
    if (!gog_->is_tree_edge(f) && f < gog_->bar(f)) out.push_back(edge_element(f));
  }
  return out;
}

std::string GogGroup::format(const Element& a) const { return to_string(decode(a), *gog_); }

}  // namespace relhyp
