#include "relhyp/bass_serre.hpp"

#include <algorithm>
#include <deque>

#include "relhyp/error.hpp"

namespace relhyp {

TreeBall::TreeBall(std::shared_ptr<const GraphOfGroups> gog, int radius, int center_vertex,
                   std::size_t cap, unsigned seed)
    : gog_(std::move(gog)), t_(*gog_, seed), radius_(radius) {
  const GraphOfGroups& g = *gog_;
  if (radius < 0) throw Error(ErrorKind::invalid_argument, "radius must be nonnegative");
  if (center_vertex < 0 || center_vertex >= g.num_vertices()) {
    throw Error(ErrorKind::invalid_argument, "center vertex out of range");
  }
  const GroupWord c = key(tree_path_word(g, center_vertex));
  vertices_.push_back({c, center_vertex, 0});
  incident_.emplace_back();
  index_[c] = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].level >= radius) continue;
    const GroupWord w = vertices_[i].rep;
    const int x = vertices_[i].gvertex;
    const int level = vertices_[i].level;
    for (int f = 0; f < g.num_edges(); ++f) {
      if (g.origin(f) != x) continue;
      for (Elem s : t_.left_reps(g.bar(f))) {
        const GroupWord path = reduce(concat(w, element_word(g, x, s), g), g, t_).word;
        GroupWord step = path;
        step.edges.push_back(f);
        step.elems.push_back(0);
        const GroupWord k = key(step);
        int j;
        if (auto it = index_.find(k); it != index_.end()) {
          j = it->second;
        } else {
          j = static_cast<int>(vertices_.size());
          if (vertices_.size() >= cap) {
            throw Error(ErrorKind::cap_exceeded, "tree ball exceeds cap of " + std::to_string(cap) + " vertices");
          }
          vertices_.push_back({k, g.terminus(f), level + 1});
          incident_.emplace_back();
          index_.emplace(k, j);
        }
        if (find_edge(static_cast<int>(i), j)) continue;
        const int e = static_cast<int>(edges_.size());
        edges_.push_back({static_cast<int>(i), j, f, path});
        incident_[i].push_back(e);
        incident_[j].push_back(e);
        edge_index_[{std::min<int>(i, j), std::max<int>(i, j)}] = e;
      }
    }
  }
}

int TreeBall::other_end(int edge, int vertex) const {
  return edges_[edge].a == vertex ? edges_[edge].b : edges_[edge].a;
}

int TreeBall::full_degree(int v) const {
  const GraphOfGroups& g = *gog_;
  int d = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.terminus(e) == v) d += g.vertex_group(v).order() / g.image(e).order();
  }
  return d;
}

std::vector<int> TreeBall::level_counts() const {
  std::vector<int> out(radius_ + 1, 0);
  for (const auto& v : vertices_) ++out[v.level];
  return out;
}

GroupWord TreeBall::key(const GroupWord& w) const {
  const GraphOfGroups& g = *gog_;
  const int v = end_vertex(w, g);
  std::optional<GroupWord> best;
  for (Elem h = 0; h < g.vertex_group(v).order(); ++h) {
    GroupWord c = reduce(concat(w, element_word(g, v, h), g), g, t_).word;
    if (!best || c < *best) best = std::move(c);
  }
  return *best;
}

std::optional<int> TreeBall::find_vertex(const GroupWord& w) const {
  auto it = index_.find(key(w));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> TreeBall::find_edge(int a, int b) const {
  auto it = edge_index_.find({std::min(a, b), std::max(a, b)});
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> TreeBall::act(const GroupWord& g, int vertex) const {
  if (g.base != 0 || !is_loop(g, *gog_)) {
    throw Error(ErrorKind::invalid_word, "acting element must be a loop at vertex 0");
  }
  return find_vertex(concat(g, vertices_[vertex].rep, *gog_));
}

std::optional<int> TreeBall::act_edge(const GroupWord& g, int edge) const {
  const auto a = act(g, edges_[edge].a);
  const auto b = act(g, edges_[edge].b);
  if (!a || !b) return std::nullopt;
  return find_edge(*a, *b);
}

StabilizerData TreeBall::vertex_stabilizer(int vertex) const {
  const GraphOfGroups& g = *gog_;
  const TreeVertex& v = vertices_[vertex];
  StabilizerData out{false, v.gvertex, v.rep, {}};
  const GroupWord inv = inverse(v.rep, g);
  for (Elem h = 0; h < g.vertex_group(v.gvertex).order(); ++h) {
    out.elements.push_back(
        reduce(concat(concat(v.rep, element_word(g, v.gvertex, h), g), inv, g), g, t_).word);
  }
  return out;
}

StabilizerData TreeBall::edge_stabilizer(int edge) const {
  const GraphOfGroups& g = *gog_;
  const TreeEdge& e = edges_[edge];
  const int x = g.origin(e.gedge);
  StabilizerData out{true, e.gedge, e.path, {}};
  const GroupWord inv = inverse(e.path, g);
  for (Elem h : g.image(g.bar(e.gedge)).elements) {
    out.elements.push_back(
        reduce(concat(concat(e.path, element_word(g, x, h), g), inv, g), g, t_).word);
  }
  return out;
}

std::vector<int> TreeBall::geodesic(int u, int v) const {
  std::vector<int> parent(vertices_.size(), -1);
  std::deque<int> queue{u};
  parent[u] = u;
  while (!queue.empty() && parent[v] < 0) {
    const int x = queue.front();
    queue.pop_front();
    for (int e : incident_[x]) {
      const int y = other_end(e, x);
      if (parent[y] >= 0) continue;
      parent[y] = x;
      queue.push_back(y);
    }
  }
  if (parent[v] < 0) throw Error(ErrorKind::invalid_argument, "vertices are not connected in the ball");
  std::vector<int> path{v};
  while (path.back() != u) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace relhyp
