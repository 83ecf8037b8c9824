#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "relhyp/graph_of_groups.hpp"

namespace relhyp {

// Vertex [w] = w G_v of the Bass-Serre tree, w a path word from vertex 0 of
// the graph of groups ending at v. rep is the least normal form in the coset.
struct TreeVertex {
  GroupWord rep;
  int gvertex = 0;
  int level = 0;
};

// Edge [path] -> [path gedge]; path ends at o(gedge).
struct TreeEdge {
  int a = 0;
  int b = 0;
  int gedge = 0;
  GroupWord path;
};

struct StabilizerData {
  bool is_edge = false;
  int base = 0;  // vertex of the graph of groups, or edge whose inverse image is used
  GroupWord conjugator;
  std::vector<GroupWord> elements;  // loop words at vertex 0, reduced
};

class TreeBall {
 public:
  TreeBall(std::shared_ptr<const GraphOfGroups> gog, int radius, int center_vertex = 0,
           std::size_t cap = 1'000'000, unsigned seed = 0);

  const GraphOfGroups& gog() const noexcept { return *gog_; }
  const Transversals& transversals() const noexcept { return t_; }
  int radius() const noexcept { return radius_; }
  int center() const noexcept { return 0; }
  const std::vector<TreeVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<TreeEdge>& edges() const noexcept { return edges_; }
  // Edge indices incident to vertex i.
  const std::vector<int>& incident(int i) const { return incident_[i]; }
  int other_end(int edge, int vertex) const;
  int degree(int i) const { return static_cast<int>(incident_[i].size()); }
  // Degree predicted by the index formula for a vertex over gvertex v.
  int full_degree(int v) const;
  std::vector<int> level_counts() const;

  // Least normal form of w G_v.
  GroupWord key(const GroupWord& w) const;
  std::optional<int> find_vertex(const GroupWord& w) const;
  std::optional<int> find_edge(int a, int b) const;
  // g is a loop word at vertex 0; nullopt when the image leaves the ball.
  std::optional<int> act(const GroupWord& g, int vertex) const;
  std::optional<int> act_edge(const GroupWord& g, int edge) const;
  StabilizerData vertex_stabilizer(int vertex) const;
  StabilizerData edge_stabilizer(int edge) const;
  // Vertex sequence of the unique path.
  std::vector<int> geodesic(int u, int v) const;

 private:
  std::shared_ptr<const GraphOfGroups> gog_;
  Transversals t_;
  int radius_;
  std::vector<TreeVertex> vertices_;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<int>> incident_;
  std::map<GroupWord, int> index_;
  std::map<std::pair<int, int>, int> edge_index_;
};

}  // namespace relhyp
