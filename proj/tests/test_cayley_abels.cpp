#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "doctest.h"
#include "relhyp/bass_serre.hpp"
#include "relhyp/cayley_abels.hpp"
#include "relhyp/error.hpp"

using namespace relhyp;

namespace {

using Pt = std::pair<long, long>;

// Coned-off Z^2 built directly: points (x,y) and cones c_y over rows. Cones are
// reached but not expanded; the ball is the induced subgraph.
struct ConedOracle {
  std::map<std::pair<int, Pt>, int> level;  // (0, point) or (1, (0, row))
  std::set<std::pair<std::pair<int, Pt>, std::pair<int, Pt>>> edges;
};

ConedOracle coned_z2(int radius) {
  ConedOracle o;
  using V = std::pair<int, Pt>;
  auto neighbours = [](const V& v) {
    std::vector<V> out;
    if (v.first == 0) {
      const auto [x, y] = v.second;
      out = {{0, {x + 1, y}}, {0, {x - 1, y}}, {0, {x, y + 1}}, {0, {x, y - 1}}, {1, {0, y}}};
    }
    return out;
  };
  std::queue<V> q;
  o.level[{0, {0, 0}}] = 0;
  q.push({0, {0, 0}});
  while (!q.empty()) {
    const V v = q.front();
    q.pop();
    if (o.level[v] == radius) continue;
    for (const V& w : neighbours(v)) {
      if (o.level.count(w)) continue;
      o.level[w] = o.level[v] + 1;
      q.push(w);
    }
  }
  for (const auto& [v, l] : o.level)
    for (const V& w : neighbours(v))
      if (o.level.count(w)) o.edges.insert({std::min(v, w), std::max(v, w)});
  return o;
}

std::string ahu(const Graph& g, const std::vector<int>& tag, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : g.adj[v])
    if (w != parent) kids.push_back(ahu(g, tag, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(" + std::to_string(tag[v]);
  for (const auto& k : kids) s += k;
  return s + ")";
}

std::string ball_shape(const GGraphBall& b) {
  std::vector<int> tags;
  for (const auto& v : b.vertices()) tags.push_back(v.tag);
  return ahu(b.graph(), tags, 0, -1);
}

WordOracle s3_oracle(const SyllableSpace& space) {
  // s -> (0 1), t -> (1 2) generate S3 = D3; a word is trivial iff its image is.
  return [&space](const SylWord& w) -> std::optional<bool> {
    std::array<int, 3> p{0, 1, 2};
    for (const auto& s : space.normalize(w)) {
      if (s.value == 0) continue;
      if (s.factor == 0) std::swap(p[0], p[1]);
      else std::swap(p[1], p[2]);
    }
    return p == std::array<int, 3>{0, 1, 2};
  };
}

}  // namespace

TEST_CASE("Cayley graph of Z is a path") {
  auto z = std::make_shared<const LatticeGroup>(1);
  const GGraphBall b = coset_graph_ball(z, trivial_handle(z), {{1}}, {}, 3);
  CHECK(b.size() == 7);
  CHECK(b.graph().num_edges() == 6);
  CHECK(b.graph().connected());
}

TEST_CASE("coned-off Z^2 matches a direct construction") {
  auto z2 = std::make_shared<const LatticeGroup>(2);
  for (int radius = 2; radius <= 5; ++radius) {
    const GGraphBall b = coset_graph_ball(z2, trivial_handle(z2), {{1, 0}, {0, 1}}, {lattice_axis_handle(2, 0)}, radius);
    const ConedOracle o = coned_z2(radius);
    REQUIRE(b.size() == static_cast<int>(o.level.size()));
    auto key = [&](int i) {
      const GVertex& v = b.vertices()[i];
      return v.tag == 0 ? std::pair<int, Pt>{0, {v.rep[0], v.rep[1]}} : std::pair<int, Pt>{1, {0, v.rep[1]}};
    };
    for (int i = 0; i < b.size(); ++i) CHECK(o.level.at(key(i)) == b.vertices()[i].level);
    std::set<std::pair<std::pair<int, Pt>, std::pair<int, Pt>>> got;
    for (const auto& [x, y] : b.graph().edge_list()) got.insert({std::min(key(x), key(y)), std::max(key(x), key(y))});
    CHECK(got == o.edges);
  }
}

TEST_CASE("finite group coset graph") {
  auto c6 = std::make_shared<const FiniteGroup>(make_cyclic(6));
  auto g = std::make_shared<const FiniteConcrete>(c6, std::vector<Elem>{1});
  const GGraphBall b = coset_graph_ball(g, finite_handle(g, "U", {{0}, {3}}), {{1}}, {}, 3);
  CHECK(b.size() == 3);
  CHECK(b.graph().num_edges() == 3);
}

TEST_CASE("quotient ball without relators is the tree") {
  auto gog = std::make_shared<const GraphOfGroups>(make_sl2z_amalgam());
  auto trivial = [](const SylWord& w) -> std::optional<bool> { return w.empty(); };
  for (int r = 1; r <= 5; ++r) {
    const GGraphBall q = quotient_tree_ball(gog, {}, r, trivial);
    const TreeBall t(gog, r);
    CHECK(q.size() == static_cast<int>(t.vertices().size()));
    CHECK(q.graph().num_edges() == t.edges().size());
    std::vector<int> levels(r + 1, 0);
    for (const auto& v : q.vertices()) ++levels[v.level];
    CHECK(levels == t.level_counts());
  }
}

TEST_CASE("tree and coset-graph constructions agree") {
  auto gog = std::make_shared<const GraphOfGroups>(make_sl2z_amalgam());
  auto sl = std::make_shared<const Sl2zGroup>();
  const auto a = finite_handle(sl, "A", enumerate_subgroup(*sl, {Sl2zGroup::gen_a()}));
  const auto b = finite_handle(sl, "B", enumerate_subgroup(*sl, {Sl2zGroup::gen_b()}));
  auto trivial = [](const SylWord& w) -> std::optional<bool> { return w.empty(); };
  for (int r = 2; r <= 6; ++r) {
    const GGraphBall coset = coset_graph_ball(sl, a, {}, {b}, r);
    const GGraphBall tree = quotient_tree_ball(gog, {}, r, trivial);
    CHECK(ball_shape(coset) == ball_shape(tree));
  }
}

TEST_CASE("relator of length 72 makes no identification at radius 3") {
  auto gog = std::make_shared<const GraphOfGroups>(make_free_product(make_cyclic(4), make_cyclic(6)));
  GroupWord r = amalgam_word(*gog, {{0, 1}, {1, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
  GroupWord r12 = r;
  for (int i = 1; i < 12; ++i) r12 = concat(r12, r, *gog);
  // Any nontrivial kernel element has length at least 72 - 2*3*... far beyond
  // the words reached at radius 3, so plain normal-form equality decides.
  auto nf = [](const SylWord& w) -> std::optional<bool> { return w.empty(); };
  const GGraphBall q = quotient_tree_ball(gog, {r12}, 3, nf);
  const TreeBall t(gog, 3);
  CHECK(q.size() == static_cast<int>(t.vertices().size()));
  CHECK(q.graph().num_edges() == t.edges().size());
}

TEST_CASE("C2 * C2 modulo (st)^3 is the hexagon") {
  auto gog = std::make_shared<const GraphOfGroups>(make_free_product(make_cyclic(2), make_cyclic(2)));
  const SyllableSpace space(gog);
  const GroupWord st = amalgam_word(*gog, {{0, 1}, {1, 1}});
  const GroupWord rel = concat(concat(st, st, *gog), st, *gog);
  for (int r = 3; r <= 6; ++r) {
    const GGraphBall q = quotient_tree_ball(gog, {rel}, r, s3_oracle(space));
    CHECK(q.size() == 6);
    CHECK(q.graph().num_edges() == 6);
    for (int v = 0; v < 6; ++v) CHECK(q.graph().degree(v) == 2);
  }
}

TEST_CASE("Cayley-Abels conditions") {
  auto z = std::make_shared<const LatticeGroup>(1);
  std::vector<GGraphBall> line;
  for (int r = 3; r <= 5; ++r) line.push_back(coset_graph_ball(z, trivial_handle(z), {{1}}, {}, r));
  const CaReport lr = check_ca_conditions({&line[0], &line[1], &line[2]});
  CHECK(lr.all_pass());
  CHECK(lr.stabilizer_orders == std::vector<int>{1});

  auto z2 = std::make_shared<const LatticeGroup>(2);
  std::vector<GGraphBall> coned;
  for (int r = 4; r <= 6; ++r)
    coned.push_back(coset_graph_ball(z2, trivial_handle(z2), {{1, 0}, {0, 1}}, {lattice_axis_handle(2, 0)}, r));
  const CaReport cr = check_ca_conditions({&coned[0], &coned[1], &coned[2]});
  CHECK(cr.all_pass());
  CHECK(cr.stabilizer_orders[1] == 0);
  const auto& growth = cr.degree_growth[1];
  CHECK(std::is_sorted(growth.begin(), growth.end()));
  CHECK(growth.front() < growth.back());
  // Cone over row 0 at radius R is joined to the 2R + 1 points of that row.
  CHECK(growth == std::vector<int>{9, 11, 13});

  GGraphBall doubled = line[0];
  doubled.force_edge(0, 1, 0);
  const CaReport dr = check_ca_conditions({&doubled});
  bool simplicial = true;
  for (const auto& c : dr.conditions)
    if (c.name == "simplicial") simplicial = c.pass;
  CHECK_FALSE(simplicial);
}

TEST_CASE("balls are monotone in the radius") {
  auto gog = std::make_shared<const GraphOfGroups>(make_sl2z_amalgam());
  auto z2 = std::make_shared<const LatticeGroup>(2);
  auto trivial = [](const SylWord& w) -> std::optional<bool> { return w.empty(); };
  // Inner radius R - 1 for locally finite families. Unexpanded cone vertices
  // create shortcuts just outside the ball, so the coned family uses R / 2.
  const std::vector<std::pair<std::function<GGraphBall(int)>, bool>> families = {
      {[&](int r) { return quotient_tree_ball(gog, {}, r, trivial); }, false},
      {[&](int r) { return coset_graph_ball(z2, trivial_handle(z2), {{1, 0}, {0, 1}}, {}, r); }, false},
      {[&](int r) {
         return coset_graph_ball(z2, trivial_handle(z2), {{1, 0}, {0, 1}}, {lattice_axis_handle(2, 0)}, r);
       },
       true}};
  for (const auto& [make, coned] : families) {
    for (int r = 2; r <= 5; ++r) {
      const GGraphBall small = make(r), big = make(r + 1);
      const int inner_radius = coned ? r / 2 : r - 1;
      std::vector<int> inner, image;
      for (int i = 0; i < small.size(); ++i) {
        if (small.vertices()[i].level > inner_radius) continue;
        inner.push_back(i);
        const auto j = big.find(small.vertices()[i].tag, small.vertices()[i].rep);
        REQUIRE(j.has_value());
        image.push_back(*j);
      }
      for (std::size_t x = 0; x < inner.size(); ++x) {
        const auto ds = small.graph().distances(inner[x]);
        const auto db = big.graph().distances(image[x]);
        for (std::size_t y = 0; y < inner.size(); ++y) CHECK(ds[inner[y]] == db[image[y]]);
      }
    }
  }
}

TEST_CASE("coned-off Z^2 is not monotone at inner radius R - 1") {
  auto z2 = std::make_shared<const LatticeGroup>(2);
  const auto h = lattice_axis_handle(2, 0);
  const GGraphBall small = coset_graph_ball(z2, trivial_handle(z2), {{1, 0}, {0, 1}}, {h}, 4);
  const GGraphBall big = coset_graph_ball(z2, trivial_handle(z2), {{1, 0}, {0, 1}}, {h}, 5);
  const int p = *small.find(0, {3, 0}), c = *small.find(1, {0, 2});
  // (3,0) - (3,1) - (3,2) - c_2 needs (3,2), which sits at level 5.
  CHECK(small.graph().distances(p)[c] == 4);
  CHECK(big.graph().distances(*big.find(0, {3, 0}))[*big.find(1, {0, 2})] == 3);
}

TEST_CASE("empirical quasi-isometry between two Cayley graphs of Z^2") {
  auto z2 = std::make_shared<const LatticeGroup>(2);
  const GGraphBall a = coset_graph_ball(z2, trivial_handle(z2), {{1, 0}, {0, 1}}, {}, 8);
  const GGraphBall b = coset_graph_ball(z2, trivial_handle(z2), {{1, 0}, {0, 1}, {1, 1}}, {}, 8);
  const QiFit fit = empirical_qi(a, b);
  CHECK(fit.ell == 2);
  CHECK(fit.pairs > 0);
}
