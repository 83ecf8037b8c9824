#include "relhyp/g_graph.hpp"

#include <algorithm>
#include <deque>

#include "relhyp/error.hpp"

namespace relhyp {

int Graph::add_vertex() {
  adj.emplace_back();
  return size() - 1;
}

bool Graph::add_edge(int a, int b) {
  if (a == b || has_edge(a, b)) return false;
  adj[a].push_back(b);
  adj[b].push_back(a);
  return true;
}

bool Graph::has_edge(int a, int b) const {
  const auto& s = adj[a].size() <= adj[b].size() ? adj[a] : adj[b];
  const int t = adj[a].size() <= adj[b].size() ? b : a;
  return std::find(s.begin(), s.end(), t) != s.end();
}

std::size_t Graph::num_edges() const {
  std::size_t n = 0;
  for (const auto& a : adj) n += a.size();
  return n / 2;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a)
    for (int b : adj[a])
      if (a < b) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Graph::distances(int src, int blocked) const {
  std::vector<int> d(size(), -1);
  if (src == blocked) return d;
  std::deque<int> q{src};
  d[src] = 0;
  while (!q.empty()) {
    const int x = q.front();
    q.pop_front();
    for (int y : adj[x]) {
      if (y == blocked || d[y] >= 0) continue;
      d[y] = d[x] + 1;
      q.push_back(y);
    }
  }
  return d;
}

std::vector<int> Graph::shortest_path(int src, int dst, int blocked) const {
  const std::vector<int> d = distances(dst, blocked);
  if (d[src] < 0) return {};
  std::vector<int> path{src};
  while (path.back() != dst) {
    int best = -1;
    for (int y : adj[path.back()])
      if (y != blocked && d[y] == d[path.back()] - 1 && (best < 0 || y < best)) best = y;
    path.push_back(best);
  }
  return path;
}

bool Graph::connected() const {
  if (adj.empty()) return true;
  const auto d = distances(0);
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g = path(n);
  if (n > 2) g.add_edge(n - 1, 0);
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

std::vector<bool> GGraphBall::complete_flags() const {
  std::vector<bool> out;
  for (const auto& v : vertices_) out.push_back(v.complete);
  return out;
}

std::optional<Element> GGraphBall::key(int tag, const Element& g) const {
  const SubgroupHandle& h = spec_.tags[tag].stabilizer;
  if (h.coset_key) return h.coset_key(g);
  return std::nullopt;
}

std::optional<Element> GGraphBall::lift(int tag, const Element& g) const {
  const SubgroupHandle& h = spec_.tags[tag].stabilizer;
  if (!h.finite()) return std::nullopt;
  std::optional<Element> best;
  for (const auto& k : *h.elements) {
    auto c = group().lift_key(group().mul(g, k));
    if (!c) return std::nullopt;
    if (!best || *c < *best) best = std::move(c);
  }
  return best;
}

std::optional<Element> GGraphBall::print(int tag, const Element& g) const {
  const SubgroupHandle& h = spec_.tags[tag].stabilizer;
  if (!h.finite()) return std::nullopt;
  std::optional<Element> best;
  for (const auto& k : *h.elements) {
    auto c = group().fingerprint(group().mul(g, k));
    if (!c) return std::nullopt;
    if (!best || *c < *best) best = std::move(c);
  }
  return best;
}

std::optional<int> GGraphBall::find(int tag, const Element& g) const {
  if (tag < 0 || tag >= static_cast<int>(spec_.tags.size())) return std::nullopt;
  if (auto k = key(tag, g)) {
    auto it = keyed_.find({tag, *k});
    if (it == keyed_.end()) return std::nullopt;
    return it->second;
  }
  if (auto l = lift(tag, g)) {
    auto it = lifted_.find({tag, *l});
    if (it != lifted_.end()) return it->second;
  }
  auto it = buckets_.find({tag, print(tag, g).value_or(Element{})});
  if (it == buckets_.end()) return std::nullopt;
  const SubgroupHandle& h = spec_.tags[tag].stabilizer;
  const Element gi = group().inv(g);
  for (int c : it->second) {
    if (h.contains(group().mul(gi, vertices_[c].rep))) return c;
  }
  return std::nullopt;
}

std::optional<int> GGraphBall::act(const Element& g, int vertex) const {
  return find(vertices_[vertex].tag, group().mul(g, vertices_[vertex].rep));
}

int GGraphBall::add_vertex(int tag, const Element& g, int level) {
  const int i = size();
  vertices_.push_back({tag, g, level, false});
  graph_.add_vertex();
  if (auto k = key(tag, g)) {
    keyed_[{tag, *k}] = i;
    return i;
  }
  if (auto l = lift(tag, g)) lifted_[{tag, *l}] = i;
  buckets_[{tag, print(tag, g).value_or(Element{})}].push_back(i);
  return i;
}

bool GGraphBall::add_edge(int a, int b, int orbit) {
  if (a == b) {
    ++loops_;
    return false;
  }
  if (!graph_.add_edge(a, b)) return false;
  edges_.push_back({std::min(a, b), std::max(a, b), orbit});
  return true;
}

std::vector<GGraphBall::Candidate> GGraphBall::candidates(int vertex) const {
  const GVertex& v = vertices_[vertex];
  const auto& elems = spec_.tags[v.tag].stabilizer.elements;
  if (!elems) throw Error(ErrorKind::invalid_argument, "cannot expand a vertex with infinite stabilizer");
  std::vector<Candidate> out;
  const ConcreteGroup& G = group();
  for (int o = 0; o < static_cast<int>(spec_.orbits.size()); ++o) {
    const EdgeOrbit& eo = spec_.orbits[o];
    for (const auto& k : *elems) {
      const Element gk = G.mul(v.rep, k);
      if (eo.from == v.tag) out.push_back({o, eo.to, G.mul(gk, eo.shift)});
      if (eo.to == v.tag) out.push_back({o, eo.from, G.mul(gk, G.inv(eo.shift))});
    }
  }
  return out;
}

std::string GGraphBall::label(int vertex) const {
  const GVertex& v = vertices_[vertex];
  return spec_.tags[v.tag].name + "@" + group().format(v.rep);
}

GGraphBall build_ball(const GGraphSpec& spec, int radius, std::size_t cap) {
  if (radius < 0) throw Error(ErrorKind::invalid_argument, "radius must be nonnegative");
  if (spec.tags.empty()) throw Error(ErrorKind::invalid_argument, "G-graph needs an orbit tag");
  GGraphBall ball(spec);
  ball.radius_ = radius;
  ball.add_vertex(spec.center_tag, spec.group->identity(), 0);
  for (int i = 0; i < ball.size(); ++i) {
    const int tag = ball.vertices_[i].tag;
    if (!ball.tag_finite(tag)) continue;
    const int level = ball.vertices_[i].level;
    bool complete = true;
    for (auto& c : ball.candidates(i)) {
      auto j = ball.find(c.tag, c.g);
      if (!j) {
        if (level >= radius) {
          complete = false;
          continue;
        }
        if (static_cast<std::size_t>(ball.size()) >= cap) {
          throw Error(ErrorKind::cap_exceeded, "ball exceeds cap of " + std::to_string(cap) + " vertices");
        }
        j = ball.add_vertex(c.tag, c.g, level + 1);
      }
      ball.add_edge(i, *j, c.orbit);
    }
    ball.vertices_[i].complete = complete;
  }
  return ball;
}

}  // namespace relhyp
