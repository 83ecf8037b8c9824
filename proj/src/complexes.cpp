#include "relhyp/complexes.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

std::pair<int, int> key_of(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

std::vector<std::vector<int>> all_distances(const Graph& g) {
  std::vector<std::vector<int>> d;
  d.reserve(g.size());
  for (int i = 0; i < g.size(); ++i) d.push_back(g.distances(i));
  return d;
}

}  // namespace

std::vector<int> canonical_cycle(const std::vector<int>& cycle) {
  std::vector<int> best;
  std::vector<int> c = cycle;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < c.size(); ++r) {
      std::vector<int> rot(c.begin() + static_cast<long>(r), c.end());
      rot.insert(rot.end(), c.begin(), c.begin() + static_cast<long>(r));
      if (best.empty() || rot < best) best = std::move(rot);
    }
    std::reverse(c.begin(), c.end());
  }
  return best;
}

bool TwoComplexBall::cell_interior(int c) const {
  return std::all_of(cells2[c].begin(), cells2[c].end(), [&](int v) { return interior[v]; });
}

std::optional<int> TwoComplexBall::find_cell(const std::vector<int>& cycle) const {
  auto it = canon_.find(canonical_cycle(cycle));
  if (it == canon_.end()) return std::nullopt;
  return it->second;
}

int TwoComplexBall::add_cell(std::vector<int> cycle) {
  if (cycle.size() < 3) throw Error(ErrorKind::invalid_argument, "2-cell boundary needs at least 3 vertices");
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
    if (a < 0 || a >= num_vertices() || b < 0 || b >= num_vertices() || !skeleton.has_edge(a, b)) {
      throw Error(ErrorKind::invalid_argument, "2-cell boundary uses a missing 1-cell");
    }
  }
  auto canon = canonical_cycle(cycle);
  if (auto it = canon_.find(canon); it != canon_.end()) return it->second;
  const int idx = static_cast<int>(cells2.size());
  canon_[canon] = idx;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    auto& list = by_edge_[key_of(cycle[i], cycle[(i + 1) % cycle.size()])];
    if (list.empty() || list.back() != idx) list.push_back(idx);
  }
  cells2.push_back(std::move(cycle));
  return idx;
}

std::vector<int> TwoComplexBall::cells_at_edge(int a, int b) const {
  auto it = by_edge_.find(key_of(a, b));
  return it == by_edge_.end() ? std::vector<int>{} : it->second;
}

std::vector<int> TwoComplexBall::cells_at_vertex(int v) const {
  std::vector<int> out;
  for (int c = 0; c < static_cast<int>(cells2.size()); ++c)
    if (std::count(cells2[c].begin(), cells2[c].end(), v)) out.push_back(c);
  return out;
}

long TwoComplexBall::euler_characteristic() const {
  return static_cast<long>(num_vertices()) - static_cast<long>(skeleton.num_edges()) +
         static_cast<long>(cells2.size());
}

TwoComplexBall complex_from_graph(const Graph& g, std::vector<bool> interior) {
  TwoComplexBall x;
  x.skeleton = g;
  x.vertex_tag.assign(g.size(), 0);
  x.tag_names = {"v"};
  for (int i = 0; i < g.size(); ++i) x.labels.push_back(std::to_string(i));
  x.interior = interior.empty() ? std::vector<bool>(g.size(), true) : std::move(interior);
  return x;
}

TwoComplexBall complex_from_ball(const GGraphBall& ball) {
  TwoComplexBall x = complex_from_graph(ball.graph(), ball.complete_flags());
  x.tag_names.clear();
  for (const auto& t : ball.spec().tags) x.tag_names.push_back(t.name);
  for (int i = 0; i < ball.size(); ++i) {
    x.vertex_tag[i] = ball.vertices()[i].tag;
    x.labels[i] = ball.label(i);
  }
  return x;
}

std::vector<std::vector<int>> simple_cycles(const Graph& g, int k, std::size_t cap) {
  std::vector<std::vector<int>> out;
  if (k < 3) return out;
  std::vector<int> path;
  std::vector<char> on(g.size(), 0);
  std::function<void(int, int)> dfs = [&](int s, int x) {
    for (int y : g.adj[x]) {
      if (y == s && path.size() >= 3 && path[1] < path.back()) {
        out.push_back(path);
        if (out.size() > cap) throw Error(ErrorKind::cap_exceeded, "simple cycle count exceeds cap");
      }
      if (y <= s || on[y] || static_cast<int>(path.size()) >= k) continue;
      on[y] = 1;
      path.push_back(y);
      dfs(s, y);
      path.pop_back();
      on[y] = 0;
    }
  };
  for (int s = 0; s < g.size(); ++s) {
    path = {s};
    on[s] = 1;
    dfs(s, s);
    on[s] = 0;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

TwoComplexBall omega_k(const TwoComplexBall& base, int k, std::size_t cap) {
  if (k < 0) throw Error(ErrorKind::invalid_argument, "k must be nonnegative");
  TwoComplexBall x = complex_from_graph(base.skeleton, base.interior);
  x.vertex_tag = base.vertex_tag;
  x.tag_names = base.tag_names;
  x.labels = base.labels;
  for (auto& c : simple_cycles(base.skeleton, k, cap)) x.add_cell(std::move(c));
  return x;
}

TwoComplexBall omega_k(const GGraphBall& ball, int k, std::size_t cap) {
  return omega_k(complex_from_ball(ball), k, cap);
}

int LinkGraph::degree(int i) const {
  int d = 0;
  for (const auto& [a, b] : corners) d += (a == i) + (b == i);
  return d;
}

LinkGraph link(const TwoComplexBall& x, int v) {
  LinkGraph l;
  l.base = v;
  l.edge_ends = x.skeleton.adj[v];
  std::sort(l.edge_ends.begin(), l.edge_ends.end());
  l.graph = Graph(static_cast<int>(l.edge_ends.size()));
  auto index = [&](int w) {
    return static_cast<int>(std::lower_bound(l.edge_ends.begin(), l.edge_ends.end(), w) - l.edge_ends.begin());
  };
  for (const auto& cell : x.cells2) {
    const std::size_t n = cell.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (cell[i] != v) continue;
      const int a = index(cell[(i + n - 1) % n]);
      const int b = index(cell[(i + 1) % n]);
      l.corners.push_back({std::min(a, b), std::max(a, b)});
      l.graph.add_edge(a, b);
    }
  }
  std::sort(l.corners.begin(), l.corners.end());
  l.partial = !x.interior[v];
  return l;
}

LinkCorrespondence link_component_correspondence(const TwoComplexBall& x, int v, std::vector<int> orbit) {
  if (orbit.empty()) orbit = {v};
  std::vector<char> removed(x.num_vertices(), 0);
  for (int o : orbit) removed[o] = 1;
  LinkCorrespondence rep;
  const LinkGraph l = link(x, v);
  const int n = static_cast<int>(l.edge_ends.size());
  UnionFind lu(n);
  for (const auto& [a, b] : l.corners) lu.unite(a, b);

  const auto edges = x.skeleton.edge_list();
  std::map<std::pair<int, int>, int> edge_node;
  const int nv = x.num_vertices();
  for (std::size_t i = 0; i < edges.size(); ++i) edge_node[edges[i]] = nv + static_cast<int>(i);
  const int base_cells = nv + static_cast<int>(edges.size());
  UnionFind pu(base_cells + static_cast<int>(x.cells2.size()));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [a, b] = edges[i];
    if (!removed[a]) pu.unite(nv + static_cast<int>(i), a);
    if (!removed[b]) pu.unite(nv + static_cast<int>(i), b);
  }
  for (std::size_t c = 0; c < x.cells2.size(); ++c) {
    const auto& cell = x.cells2[c];
    for (std::size_t i = 0; i < cell.size(); ++i) {
      pu.unite(base_cells + static_cast<int>(c), edge_node.at(key_of(cell[i], cell[(i + 1) % cell.size()])));
    }
  }
  std::map<int, int> lcomp, pcomp;
  for (int i = 0; i < n; ++i) lcomp.emplace(lu.find(i), static_cast<int>(lcomp.size()));
  for (int i = 0; i < n; ++i) pcomp.emplace(pu.find(edge_node.at(key_of(v, l.edge_ends[i]))), static_cast<int>(pcomp.size()));
  rep.link_components = static_cast<int>(lcomp.size());
  rep.puncture_components = static_cast<int>(pcomp.size());
  rep.mapping.assign(rep.link_components, -1);
  bool consistent = true;
  for (int i = 0; i < n; ++i) {
    const int lc = lcomp.at(lu.find(i));
    const int pc = pcomp.at(pu.find(edge_node.at(key_of(v, l.edge_ends[i]))));
    if (rep.mapping[lc] >= 0 && rep.mapping[lc] != pc) consistent = false;
    rep.mapping[lc] = pc;
  }
  rep.bijective = consistent && rep.link_components == rep.puncture_components;
  rep.boundary_interference = !x.interior[v];
  for (int w : x.skeleton.adj[v]) rep.boundary_interference = rep.boundary_interference || !x.interior[w];
  return rep;
}

Presentation pi1_presentation(const TwoComplexBall& x) {
  const Graph& g = x.skeleton;
  Presentation p;
  if (g.size() == 0) return p;
  if (!g.connected()) throw Error(ErrorKind::invalid_argument, "complex is disconnected");
  std::vector<int> parent(g.size(), -2);
  std::deque<int> q{0};
  parent[0] = -1;
  while (!q.empty()) {
    const int a = q.front();
    q.pop_front();
    std::vector<int> nb = g.adj[a];
    std::sort(nb.begin(), nb.end());
    for (int b : nb) {
      if (parent[b] != -2) continue;
      parent[b] = a;
      q.push_back(b);
    }
  }
  std::map<std::pair<int, int>, int> gen;
  for (const auto& [a, b] : g.edge_list()) {
    if (parent[b] == a || parent[a] == b) continue;
    gen[{a, b}] = p.num_generators++;
    p.generator_edges.push_back({a, b});
  }
  for (const auto& cell : x.cells2) {
    std::vector<int> word;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const int a = cell[i], b = cell[(i + 1) % cell.size()];
      auto it = gen.find(key_of(a, b));
      if (it == gen.end()) continue;
      const int letter = (a < b ? 1 : -1) * (it->second + 1);
      if (!word.empty() && word.back() == -letter) {
        word.pop_back();
      } else {
        word.push_back(letter);
      }
    }
    while (word.size() >= 2 && word.front() == -word.back()) {
      word.erase(word.begin());
      word.pop_back();
    }
    if (!word.empty()) p.relators.push_back(std::move(word));
  }
  return p;
}

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) return diag;
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const BigInt f = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= f * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const BigInt f = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= f * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t c = t; c < cols; ++c) m[t][c] += m[i][c];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(m[t][t]));
  }
  return diag;
}

std::string Abelianization::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (rank > 0) os << (first ? "" : " + ") << "Z" << (rank > 1 ? "^" + std::to_string(rank) : "");
  if (first && rank == 0) os << "0";
  return os.str();
}

Abelianization abelianization(const Presentation& p) {
  std::vector<std::vector<BigInt>> m(p.relators.size(), std::vector<BigInt>(p.num_generators, 0));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int l : p.relators[r]) m[r][std::abs(l) - 1] += l > 0 ? 1 : -1;
  Abelianization a;
  const auto diag = smith_diagonal(std::move(m));
  a.rank = p.num_generators - static_cast<int>(diag.size());
  for (const auto& d : diag)
    if (d != 1) a.torsion.push_back(d);
  return a;
}

const char* to_string(Triviality t) {
  switch (t) {
    case Triviality::yes: return "YES";
    case Triviality::no: return "NO";
    case Triviality::unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

TrivialityReport bounded_trivial(const Presentation& p, long effort) {
  TrivialityReport rep;
  rep.h1 = abelianization(p);
  if (!rep.h1.trivial()) {
    rep.verdict = Triviality::no;
    rep.remaining_generators = p.num_generators;
    return rep;
  }
  auto reduce = [](std::vector<int>& w) {
    std::vector<int> out;
    for (int l : w) {
      if (!out.empty() && out.back() == -l) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    std::size_t s = 0, e = out.size();
    while (e - s >= 2 && out[s] == -out[e - 1]) {
      ++s;
      --e;
    }
    w.assign(out.begin() + static_cast<long>(s), out.begin() + static_cast<long>(e));
  };
  std::vector<std::vector<int>> rels = p.relators;
  std::set<int> alive;
  for (int g = 1; g <= p.num_generators; ++g) alive.insert(g);
  for (auto& r : rels) reduce(r);
  while (!alive.empty()) {
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    std::size_t best_len = 0;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      std::map<int, int> count;
      for (int l : rels[r]) ++count[std::abs(l)];
      for (std::size_t i = 0; i < rels[r].size(); ++i) {
        if (count[std::abs(rels[r][i])] != 1) continue;
        if (!pick || rels[r].size() < best_len) {
          pick = {r, i};
          best_len = rels[r].size();
        }
        break;
      }
    }
    if (!pick) break;
    const auto [r, i] = *pick;
    const std::vector<int> rel = rels[r];
    const int letter = rel[i];
    const int g = std::abs(letter);
    // rel = u g^s v, so g^s = u^-1 v^-1 and g = (v u)^-s.
    std::vector<int> vu(rel.begin() + static_cast<long>(i) + 1, rel.end());
    vu.insert(vu.end(), rel.begin(), rel.begin() + static_cast<long>(i));
    std::vector<int> image;
    if (letter > 0) {
      for (auto it = vu.rbegin(); it != vu.rend(); ++it) image.push_back(-*it);
    } else {
      image = vu;
    }
    rels.erase(rels.begin() + static_cast<long>(r));
    for (auto& w : rels) {
      std::vector<int> out;
      for (int l : w) {
        if (std::abs(l) != g) {
          out.push_back(l);
          continue;
        }
        if (l > 0) {
          out.insert(out.end(), image.begin(), image.end());
        } else {
          for (auto it = image.rbegin(); it != image.rend(); ++it) out.push_back(-*it);
        }
        rep.rewrites += static_cast<long>(image.size()) + 1;
      }
      w = std::move(out);
      reduce(w);
    }
    rels.erase(std::remove_if(rels.begin(), rels.end(), [](const auto& w) { return w.empty(); }), rels.end());
    alive.erase(g);
    ++rep.rewrites;
    if (rep.rewrites > effort) break;
  }
  rep.remaining_generators = static_cast<int>(alive.size());
  rep.verdict = alive.empty() ? Triviality::yes : Triviality::unknown;
  return rep;
}

DehnFunctionTable dehn_function_sample(
    const std::vector<int>& lengths, const std::function<WordBatch(int, std::uint64_t)>& words,
    const std::function<std::optional<int>(const std::vector<int>&)>& area, std::uint64_t seed) {
  DehnFunctionTable t;
  t.seed = seed;
  double num = 0, den = 0;
  for (int n : lengths) {
    const WordBatch batch = words(n, seed + static_cast<std::uint64_t>(n));
    KernelSample row;
    row.length = n;
    row.exhaustive = batch.exhaustive;
    row.candidates = static_cast<int>(batch.words.size());
    for (const auto& w : batch.words) {
      if (auto a = area(w)) {
        ++row.kernel_words;
        row.max_area = std::max(row.max_area, *a);
      }
    }
    if (row.kernel_words > 0) {
      num += static_cast<double>(n) * row.max_area;
      den += static_cast<double>(n) * n;
    }
    t.rows.push_back(row);
  }
  t.slope = den > 0 ? num / den : 0.0;
  return t;
}

HyperbolicityEstimate hyperbolicity_estimate(const Graph& g, std::size_t exhaustive_limit, long samples,
                                             std::uint64_t seed) {
  HyperbolicityEstimate est;
  est.seed = seed;
  const int n = g.size();
  if (n == 0) return est;
  if (!g.connected()) throw Error(ErrorKind::invalid_argument, "graph is disconnected");
  const auto d = all_distances(g);
  auto consider = [&](int a, int b, int c, int e) {
    int s[3] = {d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]};
    std::sort(s, s + 3);
    ++est.tuples;
    if (s[2] - s[1] > est.twice_delta) {
      est.twice_delta = s[2] - s[1];
      est.witness = {a, b, c, e};
    }
  };
  if (static_cast<std::size_t>(n) <= exhaustive_limit) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int e = c + 1; e < n; ++e) consider(a, b, c, e);
    return est;
  }
  est.sampled = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (long i = 0; i < samples; ++i) consider(pick(rng), pick(rng), pick(rng), pick(rng));
  return est;
}

}  // namespace relhyp
