#include "relhyp/fineness.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

void require_neighbour(const Graph& g, int v, int x) {
  if (!g.has_edge(v, x)) {
    throw Error(ErrorKind::invalid_argument, "vertex " + std::to_string(x) + " is not adjacent to " + std::to_string(v));
  }
}

// Forward BFS from src avoiding `blocked`, depth at most limit; path to dst or empty.
std::vector<int> forward_path(const Graph& g, int src, int dst, int blocked, int limit) {
  if (src == dst) return {src};
  std::vector<int> parent(g.size(), -1), depth(g.size(), -1);
  std::deque<int> q{src};
  depth[src] = 0;
  while (!q.empty()) {
    const int x = q.front();
    q.pop_front();
    if (depth[x] >= limit) continue;
    for (int y : g.adj[x]) {
      if (y == blocked || depth[y] >= 0) continue;
      depth[y] = depth[x] + 1;
      parent[y] = x;
      if (y == dst) {
        std::vector<int> path{dst};
        while (path.back() != src) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      q.push_back(y);
    }
  }
  return {};
}

bool is_incomplete(const std::vector<bool>& complete, int i) {
  return !complete.empty() && !complete[i];
}

VertexRef ref_of(const GGraphBall& b, int i) {
  return {b.vertices()[i].tag, b.vertices()[i].rep};
}

int locate(const GGraphBall& b, const VertexRef& r, ErrorKind kind) {
  auto i = b.find(r.tag, r.rep);
  if (!i) throw Error(kind, "vertex " + b.spec().tags[r.tag].name + "@" + b.group().format(r.rep) + " is outside the ball");
  return *i;
}

bool same_vertex(const GGraphBall& b, const VertexRef& x, const VertexRef& y) {
  if (x.tag != y.tag) return false;
  return b.spec().tags[x.tag].stabilizer.contains(b.group().mul(b.group().inv(x.rep), y.rep));
}

VertexRef translate(const ConcreteGroup& G, const Element& g, const VertexRef& r) {
  return {r.tag, G.mul(g, r.rep)};
}

}  // namespace

Angle angle(const Graph& g, int v, int x, int y) {
  require_neighbour(g, v, x);
  require_neighbour(g, v, y);
  const int d = g.distances(x, v)[y];
  if (d < 0) return std::nullopt;
  return d;
}

std::vector<AngleEntry> angle_table(const Graph& g, int v) {
  std::vector<int> nb = g.adj[v];
  std::sort(nb.begin(), nb.end());
  std::vector<AngleEntry> out;
  for (int x : nb) {
    const auto d = g.distances(x, v);
    for (int y : nb) out.push_back({x, y, d[y] < 0 ? Angle{} : Angle{d[y]}});
  }
  return out;
}

EscapingSet escaping_vectors(const Graph& g, const std::vector<bool>& complete, int u, int v, int k) {
  if (u == v) throw Error(ErrorKind::invalid_argument, "escaping paths need u != v");
  if (k < 1) throw Error(ErrorKind::invalid_argument, "k must be at least 1");
  EscapingSet out{u, v, k, {}, {}, false};
  std::vector<int> nb = g.adj[u];
  std::sort(nb.begin(), nb.end());
  for (int x : nb) {
    auto p = forward_path(g, x, v, u, k - 1);
    if (p.empty()) continue;
    p.insert(p.begin(), u);
    out.members.push_back(x);
    out.witnesses.push_back(std::move(p));
  }
  const auto d = g.distances(v, u);
  for (int z = 0; z < g.size(); ++z) {
    if (z != u && d[z] >= 0 && d[z] <= k - 1 && is_incomplete(complete, z)) out.partial = true;
  }
  return out;
}

RecursionCheck recursion_check(const Graph& g, const std::vector<bool>& complete, int u, int v, int k) {
  RecursionCheck rc;
  const EscapingSet lhs = escaping_vectors(g, complete, u, v, k + 1);
  rc.lhs = lhs.members;
  rc.partial = lhs.partial;
  std::set<int> rhs;
  for (int w : g.adj[v]) {
    if (w == u) continue;
    const EscapingSet s = escaping_vectors(g, complete, u, w, k);
    rhs.insert(s.members.begin(), s.members.end());
    rc.partial = rc.partial || s.partial;
  }
  if (g.has_edge(u, v)) rhs.insert(v);
  rc.rhs.assign(rhs.begin(), rhs.end());
  std::vector<int> diff;
  std::set_symmetric_difference(rc.lhs.begin(), rc.lhs.end(), rc.rhs.begin(), rc.rhs.end(),
                                std::back_inserter(diff));
  rc.holds = diff.empty();
  if (!diff.empty()) rc.counterexample = diff.front();
  return rc;
}

const char* to_string(FineVerdict v) { return v == FineVerdict::stable ? "STABLE" : "GROWING"; }

FinenessReport fineness_report(const std::function<GGraphBall(int)>& family, const VertexRef& u,
                               const VertexRef& v, int k, const std::vector<int>& radii) {
  if (radii.size() < 2) throw Error(ErrorKind::invalid_argument, "need at least two radii");
  if (!std::is_sorted(radii.begin(), radii.end()) || radii.back() < k + 1) {
    throw Error(ErrorKind::insufficient_radius, "radii must increase and reach k+1");
  }
  FinenessReport rep;
  std::optional<GGraphBall> prev;
  EscapingSet prev_set;
  for (int r : radii) {
    GGraphBall ball = family(r);
    const int iu = locate(ball, u, ErrorKind::insufficient_radius);
    const int iv = locate(ball, v, ErrorKind::insufficient_radius);
    EscapingSet s = escaping_vectors(ball.graph(), ball.complete_flags(), iu, iv, k);
    rep.radii.push_back(r);
    rep.cardinalities.push_back(static_cast<int>(s.members.size()));
    rep.partial.push_back(s.partial);
    if (r == radii.back()) {
      std::set<int> earlier;
      for (int m : prev_set.members) earlier.insert(locate(ball, ref_of(*prev, m), ErrorKind::insufficient_radius));
      std::set<int> now(s.members.begin(), s.members.end());
      rep.verdict = earlier == now ? FineVerdict::stable : FineVerdict::growing;
      if (rep.verdict == FineVerdict::growing) {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < s.members.size(); ++i)
          if (!earlier.count(s.members[i])) order.push_back(i);
        for (std::size_t i = 0; i < s.members.size() && order.size() < 3; ++i)
          if (earlier.count(s.members[i])) order.push_back(i);
        for (std::size_t i : order) {
          std::vector<std::string> labels;
          for (int x : s.witnesses[i]) labels.push_back(ball.label(x));
          rep.witnesses.push_back(std::move(labels));
        }
      }
    }
    prev.emplace(std::move(ball));
    prev_set = std::move(s);
  }
  return rep;
}

Attachment attach_edge_orbit(const GGraphBall& gamma, const AttachSpec& spec) {
  const ConcreteGroup& G = gamma.group();
  Attachment att;
  att.spec = spec;
  att.delta = gamma.spec();
  const int iu = locate(gamma, spec.u, ErrorKind::insufficient_radius);
  if (spec.cone) {
    att.new_tag = static_cast<int>(att.delta.tags.size());
    att.delta.tags.push_back({spec.name, spec.h});
    att.new_orbit = static_cast<int>(att.delta.orbits.size());
    att.delta.orbits.push_back({att.new_tag, spec.u.tag, spec.u.rep, spec.name});
    att.outside_hypotheses = !spec.h.finite();
    if (att.outside_hypotheses) return att;
    for (const auto& k : *spec.h.elements) {
      VertexRef e = translate(G, k, spec.u);
      const bool seen = std::any_of(att.ends.begin(), att.ends.end(),
                                    [&](const VertexRef& x) { return same_vertex(gamma, x, e); });
      if (!seen) att.ends.push_back(std::move(e));
    }
  } else {
    const int iv = locate(gamma, spec.v, ErrorKind::insufficient_radius);
    if (iu == iv) throw Error(ErrorKind::non_simplicial, "attaching {u,v} with u = v creates a loop");
    if (gamma.graph().has_edge(iu, iv)) {
      throw Error(ErrorKind::non_simplicial, "attaching {u,v} doubles an existing edge");
    }
    att.new_orbit = static_cast<int>(att.delta.orbits.size());
    att.delta.orbits.push_back({spec.u.tag, spec.v.tag, G.mul(G.inv(spec.u.rep), spec.v.rep), spec.name});
    att.ends = {spec.u, spec.v};
  }
  const std::size_t m = att.ends.size();
  att.alpha.assign(m, std::vector<std::vector<VertexRef>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const int a = locate(gamma, att.ends[i], ErrorKind::insufficient_radius);
    for (std::size_t j = 0; j < m; ++j) {
      const int b = locate(gamma, att.ends[j], ErrorKind::insufficient_radius);
      const auto p = gamma.graph().shortest_path(a, b);
      if (p.empty()) throw Error(ErrorKind::insufficient_radius, "no path between attachment ends in the ball");
      for (int x : p) att.alpha[i][j].push_back(ref_of(gamma, x));
      att.ell = std::max(att.ell, static_cast<int>(p.size()) - 1);
    }
  }
  return att;
}

std::vector<int> alpha_replacement(const std::vector<int>& delta, const GGraphBall& dball,
                                   const Attachment& att, const GGraphBall& gamma) {
  const ConcreteGroup& G = gamma.group();
  std::vector<int> out;
  auto push = [&](int x) {
    if (out.empty() || out.back() != x) out.push_back(x);
  };
  auto push_path = [&](const std::vector<VertexRef>& path, const Element& g) {
    for (const auto& r : path) push(locate(gamma, translate(G, g, r), ErrorKind::missing_alpha));
  };
  if (att.spec.cone) {
    for (std::size_t idx = 0; idx < delta.size(); ++idx) {
      const VertexRef z = ref_of(dball, delta[idx]);
      if (z.tag != att.new_tag) {
        push(locate(gamma, z, ErrorKind::insufficient_radius));
        continue;
      }
      if (idx == 0 || idx + 1 == delta.size()) continue;
      const VertexRef p = ref_of(dball, delta[idx - 1]);
      const VertexRef q = ref_of(dball, delta[idx + 1]);
      std::optional<std::size_t> i, j;
      for (std::size_t t = 0; t < att.ends.size(); ++t) {
        const VertexRef e = translate(G, z.rep, att.ends[t]);
        if (!i && same_vertex(gamma, e, p)) i = t;
        if (!j && same_vertex(gamma, e, q)) j = t;
      }
      if (!i || !j) throw Error(ErrorKind::missing_alpha, "corner at " + dball.label(delta[idx]) + " has no recorded alpha path");
      push_path(att.alpha[*i][*j], z.rep);
    }
    return out;
  }
  const auto& ku = gamma.spec().tags[att.spec.u.tag].stabilizer;
  const auto& kv = gamma.spec().tags[att.spec.v.tag].stabilizer;
  if (!ku.finite() || !kv.finite()) throw Error(ErrorKind::unsupported, "attachment ends need finite stabilizers");
  for (std::size_t idx = 0; idx < delta.size(); ++idx) {
    const VertexRef q = ref_of(dball, delta[idx]);
    const int gq = locate(gamma, q, ErrorKind::insufficient_radius);
    if (idx == 0 || gamma.graph().has_edge(out.back(), gq) || out.back() == gq) {
      push(gq);
      continue;
    }
    const VertexRef p = ref_of(gamma, out.back());
    bool done = false;
    for (const auto& k : *ku.elements) {
      const Element g = G.mul(G.mul(p.rep, k), G.inv(att.spec.u.rep));
      if (p.tag == att.spec.u.tag && same_vertex(gamma, translate(G, g, att.spec.v), q)) {
        push_path(att.alpha[0][1], g);
        done = true;
        break;
      }
    }
    for (std::size_t t = 0; !done && t < kv.elements->size(); ++t) {
      const Element g = G.mul(G.mul(p.rep, (*kv.elements)[t]), G.inv(att.spec.v.rep));
      if (p.tag == att.spec.v.tag && same_vertex(gamma, translate(G, g, att.spec.u), q)) {
        push_path(att.alpha[1][0], g);
        done = true;
      }
    }
    if (!done) throw Error(ErrorKind::missing_alpha, "edge of delta is neither in gamma nor a translate of {u,v}");
  }
  return out;
}

QiCertificate qi_certificate(const GGraphBall& gamma, const GGraphBall& delta, int ell_alpha) {
  QiCertificate c;
  const int inner = gamma.radius() / 2;
  std::vector<int> gi, di;
  for (int i = 0; i < gamma.size(); ++i) {
    if (gamma.vertices()[i].level > inner) continue;
    gi.push_back(i);
    di.push_back(locate(delta, ref_of(gamma, i), ErrorKind::insufficient_radius));
  }
  for (std::size_t x = 0; x < gi.size() && c.ok; ++x) {
    const auto dg = gamma.graph().distances(gi[x]);
    const auto dd = delta.graph().distances(di[x]);
    for (std::size_t y = x + 1; y < gi.size(); ++y) {
      const int p = dg[gi[y]], q = dd[di[y]];
      ++c.pairs;
      if (p < 0 || q < 0 || q > p || (ell_alpha > 0 && p > ell_alpha * q)) {
        c.ok = false;
        c.counterexample = {gi[x], gi[y]};
        c.detail = "d_gamma=" + std::to_string(p) + " d_delta=" + std::to_string(q);
        break;
      }
      if (q > 0) c.ell = std::max(c.ell, (p + q - 1) / q);
    }
  }
  int stray = 0;
  for (int i = 0; i < delta.size(); ++i) {
    if (delta.vertices()[i].level > inner || gamma.find(delta.vertices()[i].tag, delta.vertices()[i].rep)) continue;
    const bool touches = std::any_of(delta.graph().adj[i].begin(), delta.graph().adj[i].end(), [&](int y) {
      return static_cast<bool>(gamma.find(delta.vertices()[y].tag, delta.vertices()[y].rep));
    });
    if (!touches) ++stray;
  }
  if (stray > 0) {
    c.ok = false;
    c.detail += " " + std::to_string(stray) + " new vertices without a neighbour in gamma";
  }
  return c;
}

WzReport wz_chain(const GGraphBall& gamma, int a, int b, int n, const Attachment& att, bool corrupt_z) {
  const ConcreteGroup& G = gamma.group();
  const Graph& g = gamma.graph();
  const auto complete = gamma.complete_flags();
  const GVertex& av = gamma.vertices()[a];
  const auto& ka = gamma.spec().tags[av.tag].stabilizer;
  if (!ka.finite()) throw Error(ErrorKind::invalid_argument, "a needs a finite stabilizer");
  WzReport rep;
  rep.n = n;
  const EscapingSet top = escaping_vectors(g, complete, a, b, n);
  std::vector<int> w = top.members;
  rep.finite = !top.partial && !is_incomplete(complete, a);
  for (int j = n; j >= 1; --j) {
    std::set<int> images;
    for (int wi : w) {
      for (const auto& row : att.alpha) {
        for (const auto& path : row) {
          for (std::size_t c = 1; c + 1 < path.size(); ++c) {
            for (int dir = 0; dir < 2; ++dir) {
              const VertexRef& c0 = dir ? path[c + 1] : path[c - 1];
              const VertexRef& c1 = path[c];
              const VertexRef& c2 = dir ? path[c - 1] : path[c + 1];
              if (c1.tag != av.tag) continue;
              for (const auto& k : *ka.elements) {
                const Element x = G.mul(G.mul(av.rep, k), G.inv(c1.rep));
                auto i2 = gamma.find(c2.tag, G.mul(x, c2.rep));
                if (!i2 || *i2 != wi) continue;
                auto i0 = gamma.find(c0.tag, G.mul(x, c0.rep));
                if (!i0) {
                  rep.finite = false;
                  continue;
                }
                images.insert(*i0);
              }
            }
          }
        }
      }
    }
    std::set<int> z;
    if (corrupt_z) {
      for (int x : images)
        if (!std::count(w.begin(), w.end(), x)) z.insert(x);
    } else {
      z.insert(w.begin(), w.end());
      z.insert(images.begin(), images.end());
    }
    std::set<int> next;
    for (int zi : z) {
      const auto d = g.distances(zi, a);
      for (int x : g.adj[a])
        if (d[x] >= 0 && d[x] <= n) next.insert(x);
      for (int y = 0; y < g.size(); ++y)
        if (y != a && d[y] >= 0 && d[y] <= n - 1 && is_incomplete(complete, y)) rep.finite = false;
    }
    WzLevel lvl{j, w, std::vector<int>(z.begin(), z.end())};
    for (int x : w) {
      if (!z.count(x) && rep.chain_holds) {
        rep.chain_holds = false;
        rep.violation = "W_" + std::to_string(j) + " not contained in Z_" + std::to_string(j - 1) + " at " + gamma.label(x);
      }
    }
    for (int x : z) {
      if (!next.count(x) && rep.chain_holds) {
        rep.chain_holds = false;
        rep.violation = "Z_" + std::to_string(j - 1) + " not contained in W_" + std::to_string(j - 1) + " at " + gamma.label(x);
      }
    }
    rep.levels.push_back(std::move(lvl));
    w.assign(next.begin(), next.end());
  }
  rep.w0 = w;
  return rep;
}

}  // namespace relhyp
