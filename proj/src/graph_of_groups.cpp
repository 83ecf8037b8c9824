#include "relhyp/graph_of_groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>

#include "relhyp/error.hpp"

namespace relhyp {

int SerreGraph::add_edge_pair(int u, int v) {
  const int e = num_edges();
  origin.push_back(u);
  terminus.push_back(v);
  bar.push_back(e + 1);
  origin.push_back(v);
  terminus.push_back(u);
  bar.push_back(e);
  return e;
}

const char* to_string(GogKind kind) {
  switch (kind) {
    case GogKind::amalgam: return "amalgam";
    case GogKind::hnn: return "hnn";
    case GogKind::general: return "general";
  }
  return "general";
}

GraphOfGroups::GraphOfGroups(SerreGraph graph, std::vector<GroupPtr> vertex_groups,
                             std::vector<GroupPtr> edge_groups,
                             std::vector<std::vector<Elem>> injections)
    : graph_(std::move(graph)), vgroups_(std::move(vertex_groups)),
      egroups_(std::move(edge_groups)) {
  const int nv = graph_.num_vertices;
  const int ne = graph_.num_edges();
  auto fail = [&](std::string msg) { violations_.push_back(std::move(msg)); };

  if (nv <= 0) throw Error(ErrorKind::shape, "graph of groups needs a vertex");
  if (static_cast<int>(vgroups_.size()) != nv || static_cast<int>(egroups_.size()) != ne ||
      static_cast<int>(injections.size()) != ne ||
      static_cast<int>(graph_.terminus.size()) != ne ||
      static_cast<int>(graph_.bar.size()) != ne) {
    throw Error(ErrorKind::shape, "graph-of-groups arrays have inconsistent sizes");
  }
  for (int v = 0; v < nv; ++v) {
    if (vgroups_[v]->identity() != 0) fail("vertex group " + std::to_string(v) + " has identity other than element 0");
  }
  for (int e = 0; e < ne; ++e) {
    if (egroups_[e]->identity() != 0) fail("edge group " + std::to_string(e) + " has identity other than element 0");
  }
  for (int e = 0; e < ne; ++e) {
    const int b = graph_.bar[e];
    if (graph_.origin[e] < 0 || graph_.origin[e] >= nv || graph_.terminus[e] < 0 ||
        graph_.terminus[e] >= nv || b < 0 || b >= ne) {
      throw Error(ErrorKind::shape, "edge " + std::to_string(e) + " has out-of-range data");
    }
    if (graph_.bar[b] != e) fail("bar is not an involution at edge " + std::to_string(e));
    if (b == e) fail("edge " + std::to_string(e) + " is its own inverse");
    if (graph_.origin[e] != graph_.terminus[b]) {
      fail("o(e) != t(bar e) at edge " + std::to_string(e));
    }
    if (egroups_[e] != egroups_[b] && !(*egroups_[e] == *egroups_[b])) {
      fail("edge groups of " + std::to_string(e) + " and its inverse differ");
    }
  }

  inj_.resize(ne);
  images_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    inj_[e] = GroupHom{egroups_[e].get(), vgroups_[graph_.terminus[e]].get(),
                       std::move(injections[e])};
    bool shape_ok = static_cast<int>(inj_[e].map.size()) == egroups_[e]->order();
    for (Elem x : inj_[e].map) shape_ok = shape_ok && inj_[e].target->contains(x);
    if (!shape_ok) {
      fail("injection of edge " + std::to_string(e) + " has wrong shape");
      continue;
    }
    const HomCheck hc = check_hom(inj_[e]);
    if (!hc.ok) {
      std::string msg = "injection of edge " + std::to_string(e) + " is not a homomorphism";
      if (hc.violation) {
        msg += " (pair " + std::to_string(hc.violation->first) + "," +
               std::to_string(hc.violation->second) + ")";
      }
      fail(msg);
      continue;
    }
    if (!inj_[e].injective()) {
      fail("injection of edge " + std::to_string(e) + " is not injective");
      continue;
    }
    images_[e] = inj_[e].image();
  }

  // Maximal tree and connectivity.
  tree_edge_.assign(ne, 0);
  tree_path_.assign(nv, {});
  std::vector<char> seen(nv, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e = 0; e < ne; ++e) {
      if (graph_.origin[e] != v) continue;
      const int w = graph_.terminus[e];
      if (seen[w]) continue;
      seen[w] = 1;
      tree_edge_[e] = 1;
      tree_edge_[graph_.bar[e]] = 1;
      tree_path_[w] = tree_path_[v];
      tree_path_[w].push_back(e);
      queue.push_back(w);
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) > 0) fail("graph is not connected");

  if (nv == 2 && ne == 2 && graph_.origin[0] != graph_.terminus[0]) {
    kind_ = GogKind::amalgam;
  } else if (nv == 1 && ne == 2) {
    kind_ = GogKind::hnn;
  }
}

bool GraphOfGroups::all_edge_groups_trivial() const {
  for (const auto& g : egroups_)
    if (g->order() != 1) return false;
  return true;
}

void GraphOfGroups::require_valid() const {
  if (!valid()) throw Error(ErrorKind::invalid_argument, "invalid graph of groups: " + violations_.front());
}

GroupWord identity_word(const GraphOfGroups& gog, int base) {
  return GroupWord{base, {gog.vertex_group(base).identity()}, {}};
}

GroupWord element_word(const GraphOfGroups& gog, int v, Elem g) {
  if (!gog.vertex_group(v).contains(g)) {
    throw Error(ErrorKind::invalid_element, "element outside vertex group");
  }
  return GroupWord{v, {g}, {}};
}

int end_vertex(const GroupWord& w, const GraphOfGroups& gog) {
  return w.edges.empty() ? w.base : gog.terminus(w.edges.back());
}

bool is_loop(const GroupWord& w, const GraphOfGroups& gog) {
  return end_vertex(w, gog) == w.base;
}

void check_word(const GroupWord& w, const GraphOfGroups& gog) {
  if (w.base < 0 || w.base >= gog.num_vertices()) {
    throw Error(ErrorKind::invalid_word, "basepoint out of range");
  }
  if (w.elems.size() != w.edges.size() + 1) {
    throw Error(ErrorKind::invalid_word, "syllable count mismatch");
  }
  int v = w.base;
  for (std::size_t i = 0; i < w.elems.size(); ++i) {
    if (!gog.vertex_group(v).contains(w.elems[i])) {
      throw Error(ErrorKind::invalid_word,
                  "syllable " + std::to_string(i) + " not in vertex group " + std::to_string(v));
    }
    if (i < w.edges.size()) {
      const int e = w.edges[i];
      if (e < 0 || e >= gog.num_edges() || gog.origin(e) != v) {
        throw Error(ErrorKind::invalid_word, "edge " + std::to_string(e) +
                                                 " does not continue the path at vertex " +
                                                 std::to_string(v));
      }
      v = gog.terminus(e);
    }
  }
}

GroupWord concat(const GroupWord& u, const GroupWord& w, const GraphOfGroups& gog) {
  if (end_vertex(u, gog) != w.base) {
    throw Error(ErrorKind::invalid_word, "concatenation of non-composable words");
  }
  GroupWord out = u;
  const FiniteGroup& g = gog.vertex_group(w.base);
  out.elems.back() = g.mul(out.elems.back(), w.elems.front());
  out.elems.insert(out.elems.end(), w.elems.begin() + 1, w.elems.end());
  out.edges.insert(out.edges.end(), w.edges.begin(), w.edges.end());
  return out;
}

GroupWord inverse(const GroupWord& w, const GraphOfGroups& gog) {
  GroupWord out;
  out.base = end_vertex(w, gog);
  out.elems.clear();
  int v = out.base;
  for (int i = static_cast<int>(w.elems.size()) - 1; i >= 0; --i) {
    out.elems.push_back(gog.vertex_group(v).inv(w.elems[i]));
    if (i > 0) {
      const int e = gog.bar(w.edges[i - 1]);
      out.edges.push_back(e);
      v = gog.terminus(e);
    }
  }
  return out;
}

GroupWord tree_path_word(const GraphOfGroups& gog, int v) {
  GroupWord w = identity_word(gog, 0);
  for (int e : gog.tree_path(v)) {
    w.edges.push_back(e);
    w.elems.push_back(gog.vertex_group(gog.terminus(e)).identity());
  }
  return w;
}

std::string to_string(const GroupWord& w, const GraphOfGroups& gog) {
  std::ostringstream os;
  os << "@" << w.base << "[";
  int v = w.base;
  for (std::size_t i = 0; i < w.elems.size(); ++i) {
    if (i > 0) os << " ";
    os << gog.vertex_group(v).name(w.elems[i]);
    if (i < w.edges.size()) {
      os << " e" << w.edges[i];
      v = gog.terminus(w.edges[i]);
    }
  }
  os << "]";
  return os.str();
}

Transversals::Transversals(const GraphOfGroups& gog, unsigned seed) : seed_(seed) {
  gog.require_valid();
  const int ne = gog.num_edges();
  right_.resize(ne);
  right_reps_.resize(ne);
  left_reps_.resize(ne);
  std::mt19937 rng(seed);
  for (int e = 0; e < ne; ++e) {
    const Subgroup& im = gog.image(e);
    const FiniteGroup& g = *im.parent;
    const GroupHom& inj = gog.inj(e);
    right_[e].resize(g.order());
    for (const auto& coset : right_cosets(im)) {
      Elem rep = coset.front();
      if (seed != 0 && coset.front() != g.identity() && !im.contains(coset.front())) {
        std::uniform_int_distribution<std::size_t> pick(0, coset.size() - 1);
        rep = coset[pick(rng)];
      }
      if (im.contains(rep)) rep = g.identity();
      right_reps_[e].push_back(rep);
      for (Elem x : coset) {
        // x = h * rep with h in the image.
        const Elem h = g.mul(x, g.inv(rep));
        right_[e][x] = Split{*inj.preimage(h), rep};
      }
    }
    for (const auto& coset : left_cosets(im)) left_reps_[e].push_back(coset.front());
  }
}

Transversals fix_transversals(const GraphOfGroups& gog, unsigned seed) {
  return Transversals(gog, seed);
}

namespace {

// Pinch e g bar(e) with g in image(e) from left to right using a stack.
GroupWord pinch_left_to_right(const GroupWord& w, const GraphOfGroups& gog) {
  GroupWord out;
  out.base = w.base;
  out.elems = {w.elems[0]};
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const int e = w.edges[i];
    const Elem next = w.elems[i + 1];
    if (!out.edges.empty()) {
      const int f = out.edges.back();
      const Elem g = out.elems.back();
      if (gog.bar(f) == e && gog.image(f).contains(g)) {
        const Elem c = *gog.inj(f).preimage(g);
        const Elem x = gog.inj(gog.bar(f))(c);
        out.elems.pop_back();
        out.edges.pop_back();
        const FiniteGroup& grp = gog.vertex_group(gog.origin(f));
        out.elems.back() = grp.mul(grp.mul(out.elems.back(), x), next);
        continue;
      }
    }
    out.edges.push_back(e);
    out.elems.push_back(next);
  }
  return out;
}

void push_cosets_left(GroupWord& w, const GraphOfGroups& gog, const Transversals& t) {
  for (int i = static_cast<int>(w.edges.size()); i >= 1; --i) {
    const int e = w.edges[i - 1];
    const auto split = t.right_split(e, w.elems[i]);
    w.elems[i] = split.rep;
    const Elem x = gog.inj(gog.bar(e))(split.edge_elem);
    const FiniteGroup& g = gog.vertex_group(gog.origin(e));
    w.elems[i - 1] = g.mul(w.elems[i - 1], x);
  }
}

}  // namespace

NormalForm reduce(const GroupWord& w, const GraphOfGroups& gog, const Transversals& t,
                  Sweep sweep) {
  check_word(w, gog);
  GroupWord pinched;
  if (sweep == Sweep::left_to_right) {
    pinched = pinch_left_to_right(w, gog);
  } else {
    pinched = inverse(pinch_left_to_right(inverse(w, gog), gog), gog);
  }
  push_cosets_left(pinched, gog, t);
  return NormalForm{std::move(pinched), gog.kind()};
}

bool words_equal(const GroupWord& u, const GroupWord& w, const GraphOfGroups& gog,
                 const Transversals& t) {
  if (u.base != w.base) throw Error(ErrorKind::basepoint_mismatch, "words have different basepoints");
  return reduce(u, gog, t).word == reduce(w, gog, t).word;
}

int syllable_length(const NormalForm& nf, const GraphOfGroups& gog, const Transversals& t) {
  const GroupWord& w = nf.word;
  if (gog.kind() != GogKind::amalgam) return w.num_edges();
  if (w.edges.empty()) {
    // A single element of one factor: length 1 unless it lies in C.
    const int v = w.base;
    const int e = v == gog.terminus(0) ? 0 : 1;
    return gog.image(e).contains(w.elems[0]) ? 0 : 1;
  }
  const int out_edge = w.edges.front();
  int n = t.right_split(gog.bar(out_edge), w.elems[0]).rep != 0 ? 1 : 0;
  for (std::size_t i = 1; i < w.elems.size(); ++i) n += w.elems[i] != 0 ? 1 : 0;
  return n;
}

bool is_cyclically_reduced(const GroupWord& w, const GraphOfGroups& gog) {
  const int n = w.num_edges();
  if (n == 0 || w.base != end_vertex(w, gog)) return true;
  const int first = w.edges.front();
  const int last = w.edges.back();
  if (gog.bar(last) != first) return true;
  const FiniteGroup& g = gog.vertex_group(w.base);
  return !gog.image(last).contains(g.mul(w.elems.back(), w.elems.front()));
}

CyclicReduction cyclically_reduce(const GroupWord& w, const GraphOfGroups& gog,
                                  const Transversals& t) {
  if (!is_loop(w, gog)) throw Error(ErrorKind::invalid_word, "cyclic reduction needs a loop");
  GroupWord core = reduce(w, gog, t).word;
  GroupWord conj = identity_word(gog, w.base);
  while (!is_cyclically_reduced(core, gog)) {
    // Conjugate by g0 e1 so the seam pinch becomes internal.
    GroupWord step{core.base, {core.elems[0]}, {core.edges[0]}};
    step.elems.push_back(gog.vertex_group(gog.terminus(core.edges[0])).identity());
    GroupWord next = concat(concat(inverse(step, gog), core, gog), step, gog);
    conj = concat(conj, step, gog);
    core = reduce(next, gog, t).word;
  }
  conj = reduce(conj, gog, t).word;
  return CyclicReduction{std::move(core), std::move(conj)};
}

GraphOfGroups make_amalgam(const FiniteGroup& a, const FiniteGroup& b, const FiniteGroup& c,
                           std::vector<Elem> into_a, std::vector<Elem> into_b) {
  SerreGraph g;
  g.num_vertices = 2;
  g.add_edge_pair(0, 1);
  auto cp = std::make_shared<const FiniteGroup>(c);
  return GraphOfGroups(std::move(g),
                       {std::make_shared<const FiniteGroup>(a),
                        std::make_shared<const FiniteGroup>(b)},
                       {cp, cp}, {std::move(into_b), std::move(into_a)});
}

GraphOfGroups make_sl2z_amalgam() {
  return make_amalgam(make_cyclic(4), make_cyclic(6), make_cyclic(2), {0, 2}, {0, 3});
}

GraphOfGroups make_free_product(const FiniteGroup& a, const FiniteGroup& b) {
  return make_amalgam(a, b, make_cyclic(1), {0}, {0});
}

GraphOfGroups make_hnn(const FiniteGroup& a, const FiniteGroup& c, std::vector<Elem> into_a,
                       std::vector<Elem> into_b) {
  SerreGraph g;
  g.num_vertices = 1;
  g.add_edge_pair(0, 0);
  auto cp = std::make_shared<const FiniteGroup>(c);
  // Edge 0 is the stable letter t; relation t^-1 inj(1)(c) t = inj(0)(c).
  return GraphOfGroups(std::move(g), {std::make_shared<const FiniteGroup>(a)}, {cp, cp},
                       {std::move(into_b), std::move(into_a)});
}

GroupWord amalgam_word(const GraphOfGroups& gog,
                       const std::vector<std::pair<int, Elem>>& syllables) {
  if (gog.kind() != GogKind::amalgam) {
    throw Error(ErrorKind::invalid_argument, "amalgam_word needs an amalgam");
  }
  GroupWord w = identity_word(gog, 0);
  int cur = 0;
  for (const auto& [v, g] : syllables) {
    if (v != 0 && v != 1) throw Error(ErrorKind::invalid_word, "factor must be 0 or 1");
    if (!gog.vertex_group(v).contains(g)) {
      throw Error(ErrorKind::invalid_element, "syllable element out of range");
    }
    if (v != cur) {
      w.edges.push_back(cur == 0 ? 0 : 1);
      w.elems.push_back(g);
      cur = v;
    } else {
      w.elems.back() = gog.vertex_group(v).mul(w.elems.back(), g);
    }
  }
  if (cur != 0) {
    w.edges.push_back(1);
    w.elems.push_back(gog.vertex_group(0).identity());
  }
  return w;
}

}  // namespace relhyp
