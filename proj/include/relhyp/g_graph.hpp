#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relhyp/concrete_group.hpp"

namespace relhyp {

// Simple undirected graph; add_edge ignores loops and repeated edges.
struct Graph {
  std::vector<std::vector<int>> adj;

  Graph() = default;
  explicit Graph(int n) : adj(n) {}
  int size() const { return static_cast<int>(adj.size()); }
  int add_vertex();
  bool add_edge(int a, int b);
  bool has_edge(int a, int b) const;
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  std::size_t num_edges() const;
  std::vector<std::pair<int, int>> edge_list() const;
  // BFS distances from src with vertex `blocked` removed; -1 when unreachable.
  std::vector<int> distances(int src, int blocked = -1) const;
  // Shortest path avoiding `blocked`, ties broken towards smaller indices.
  std::vector<int> shortest_path(int src, int dst, int blocked = -1) const;
  bool connected() const;

  static Graph path(int n);
  static Graph cycle(int n);
  static Graph complete(int n);
};

struct OrbitTag {
  std::string name;
  SubgroupHandle stabilizer;
};

// Edge orbit with representative {x_from, shift . x_to}.
struct EdgeOrbit {
  int from = 0;
  int to = 0;
  Element shift;
  std::string name;
};

struct GGraphSpec {
  ConcretePtr group;
  std::vector<OrbitTag> tags;
  std::vector<EdgeOrbit> orbits;
  int center_tag = 0;
};

// Vertex rep . x_tag.
struct GVertex {
  int tag = 0;
  Element rep;
  int level = 0;
  bool complete = false;
};

struct GEdge {
  int a = 0;
  int b = 0;
  int orbit = 0;
};

class GGraphBall {
 public:
  GGraphBall() = default;
  explicit GGraphBall(GGraphSpec spec) : spec_(std::move(spec)) {}

  const GGraphSpec& spec() const noexcept { return spec_; }
  const ConcreteGroup& group() const { return *spec_.group; }
  const Graph& graph() const noexcept { return graph_; }
  const std::vector<GVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<GEdge>& edges() const noexcept { return edges_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  int radius() const noexcept { return radius_; }
  int loops_suppressed() const noexcept { return loops_; }
  std::vector<bool> complete_flags() const;
  bool tag_finite(int tag) const { return spec_.tags[tag].stabilizer.finite(); }

  std::optional<int> find(int tag, const Element& g) const;
  std::optional<int> act(const Element& g, int vertex) const;
  int add_vertex(int tag, const Element& g, int level);
  // Returns false when the edge already exists or is a loop.
  bool add_edge(int a, int b, int orbit);
  // Appends to the edge list without touching the graph; only for building
  // defective fixtures.
  void force_edge(int a, int b, int orbit) { edges_.push_back({a, b, orbit}); }
  // Neighbours of a finite-stabilizer vertex as (orbit, tag, element).
  struct Candidate {
    int orbit;
    int tag;
    Element g;
  };
  std::vector<Candidate> candidates(int vertex) const;
  std::string label(int vertex) const;

  friend GGraphBall build_ball(const GGraphSpec& spec, int radius, std::size_t cap);

 private:
  std::optional<Element> key(int tag, const Element& g) const;
  std::optional<Element> lift(int tag, const Element& g) const;
  std::optional<Element> print(int tag, const Element& g) const;

  GGraphSpec spec_;
  Graph graph_;
  std::vector<GVertex> vertices_;
  std::vector<GEdge> edges_;
  int radius_ = 0;
  int loops_ = 0;
  std::map<std::pair<int, Element>, int> keyed_;
  std::map<std::pair<int, Element>, int> lifted_;
  std::map<std::pair<int, Element>, std::vector<int>> buckets_;
};

// BFS ball of the given radius around the center vertex. Vertices with an
// infinite stabilizer are never expanded; they only join to expanded ones.
GGraphBall build_ball(const GGraphSpec& spec, int radius, std::size_t cap = 1'000'000);

}  // namespace relhyp
