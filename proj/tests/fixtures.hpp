#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relhyp/bass_serre.hpp"
#include "relhyp/cayley_abels.hpp"
#include "relhyp/fineness.hpp"
#include "relhyp/small_cancellation.hpp"

namespace fixture {

using namespace relhyp;

inline std::shared_ptr<const GraphOfGroups> sl2z() { return std::make_shared<const GraphOfGroups>(make_sl2z_amalgam()); }

inline std::shared_ptr<const GraphOfGroups> c4c6() {
  return std::make_shared<const GraphOfGroups>(make_free_product(make_cyclic(4), make_cyclic(6)));
}

// a b a^2 b^2 a^3 b^3
inline GroupWord r_word(const GraphOfGroups& g) {
  return amalgam_word(g, {{0, 1}, {1, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
}

inline int prefix_oracle(const SylWord& a, const SylWord& b) {
  int n = 0;
  while (n < static_cast<int>(std::min(a.size(), b.size())) && a[n] == b[n]) ++n;
  return n;
}

struct S3Amalgam {
  std::shared_ptr<const GraphOfGroups> gog;
  GroupWord r;
};

// S3 *_{C2} D4 with r = (3-cycle)(non-central element of D4).
inline S3Amalgam s3_amalgam() {
  const FiniteGroup s3 = make_symmetric(3), d4 = make_dihedral(4);
  Elem tr = -1, cyc = -1, inv4 = -1, other = -1;
  for (Elem g = 1; g < s3.order(); ++g) {
    if (s3.element_order(g) == 2 && tr < 0) tr = g;
    if (s3.element_order(g) == 3 && cyc < 0) cyc = g;
  }
  for (Elem g = 1; g < d4.order(); ++g)
    if (d4.element_order(g) == 2 && inv4 < 0) inv4 = g;
  for (Elem g = 1; g < d4.order() && other < 0; ++g)
    if (g != inv4) other = g;
  S3Amalgam f;
  f.gog = std::make_shared<const GraphOfGroups>(make_amalgam(s3, d4, make_cyclic(2), {0, tr}, {0, inv4}));
  f.r = amalgam_word(*f.gog, {{0, cyc}, {1, other}});
  return f;
}

// k from tree stabilizers: G_gamma is the part of the first edge stabilizer
// fixing every edge of the geodesic from y to r^2 y.
inline int tree_k(std::shared_ptr<const GraphOfGroups> g, const GroupWord& r) {
  const TreeBall t(g, 2 * static_cast<int>(r.edges.size()) + 1);
  const auto target = t.act(concat(r, r, *g), t.center());
  if (!target) throw std::runtime_error("r^2 y outside the ball");
  const auto path = t.geodesic(t.center(), *target);
  std::vector<int> edges;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.push_back(*t.find_edge(path[i], path[i + 1]));
  int common = 0;
  for (const auto& x : t.edge_stabilizer(edges.front()).elements) {
    bool fixes = true;
    for (int e : edges) fixes = fixes && t.act_edge(x, e) == e;
    common += fixes;
  }
  int k = 1;
  for (int e : edges) k = std::max(k, static_cast<int>(t.edge_stabilizer(e).elements.size()) / common);
  return k;
}

// Bass-Serre tree of C4 *_{C2} C6 with a cone over the C6-stabilizer attached
// at the C4 vertex.
struct ConedTree {
  GGraphSpec gamma;
  Attachment att;
};

inline ConedTree coned_tree(int radius) {
  ConedTree c;
  c.gamma = tree_spec(sl2z());
  const GGraphBall ball = build_ball(c.gamma, radius);
  AttachSpec s;
  s.cone = true;
  s.u = {0, c.gamma.group->identity()};
  s.h = c.gamma.tags[1].stabilizer;
  s.name = "cone";
  c.att = attach_edge_orbit(ball, s);
  return c;
}

inline GGraphSpec coned_z2() {
  auto z2 = std::make_shared<const LatticeGroup>(2);
  return coset_graph_spec(z2, trivial_handle(z2), {{1, 0}, {0, 1}}, {lattice_axis_handle(2, 0)});
}

inline GGraphSpec line() {
  auto z = std::make_shared<const LatticeGroup>(1);
  return coset_graph_spec(z, trivial_handle(z), {{1}}, {});
}

// Edges {n, n + step} on the line.
inline Attachment chords(const GGraphBall& gamma, int step = 2) {
  AttachSpec s;
  s.u = {0, {0}};
  s.v = {0, {step}};
  s.name = "chord";
  return attach_edge_orbit(gamma, s);
}

}  // namespace fixture
