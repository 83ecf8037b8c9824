#include "relhyp/small_cancellation.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <numeric>
#include <set>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

SylWord slice(const SylWord& w, std::size_t from, std::size_t to) {
  return SylWord(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(to));
}

bool prefixes_agree(const SyllableSpace& sp, const SylWord& a, const SylWord& b, std::size_t j) {
  if (sp.mode() == SyllableMode::free_product) return a[j - 1] == b[j - 1];
  const SylWord d = sp.multiply(sp.inverse(slice(a, 0, j)), slice(b, 0, j));
  return d.empty() || (d.size() == 1 && sp.in_edge_group(d[0]));
}

void require_dehn(const SymmetrizedSet& s) {
  if (s.space->mode() != SyllableMode::free_product) {
    throw Error(ErrorKind::unsupported, "Dehn's algorithm needs trivial edge groups");
  }
  if (s.members.empty()) return;
  const PieceReport rep = pieces(s);
  if (6 * rep.max_piece >= rep.min_length) {
    throw Error(ErrorKind::unsupported, "symmetrized set is not C'(1/6): piece " + std::to_string(rep.max_piece) +
                                            " against length " + std::to_string(rep.min_length));
  }
}

struct Match {
  std::size_t position;
  int matched;
  int member;
};

DehnResult dehn_unchecked(const SylWord& w0, const SymmetrizedSet& s) {
  const SyllableSpace& sp = *s.space;
  DehnResult res;
  res.word = sp.normalize(w0);
  for (;;) {
    const SylWord& w = res.word;
    std::vector<Match> found;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (int mi = 0; mi < static_cast<int>(s.members.size()); ++mi) {
        const SylWord& m = s.members[mi];
        const std::size_t len = m.size();
        if (w[i].factor != m[0].factor) continue;
        int c = 1;
        for (std::size_t t = 1; t < len && i + t < w.size(); ++t) {
          if (w[i + t] == m[t]) {
            ++c;
            continue;
          }
          if (w[i + t].factor == m[t].factor) ++c;
          break;
        }
        if (2 * static_cast<std::size_t>(c) > len) found.push_back({i, c, mi});
      }
    }
    std::stable_sort(found.begin(), found.end(), [](const Match& a, const Match& b) {
      if (a.position != b.position) return a.position < b.position;
      return a.matched > b.matched;
    });
    bool progressed = false;
    for (const Match& mt : found) {
      const SylWord& m = s.members[mt.member];
      const std::size_t i = mt.position;
      const std::size_t c = static_cast<std::size_t>(mt.matched);
      SylWord u = slice(w, 0, i);
      u.push_back({w[i].factor, sp.mul(w[i].factor, w[i].value, sp.inv(m[0].factor, m[0].value))});
      SylWord v;
      if (c >= 2) {
        const Syllable& last = w[i + c - 1];
        v.push_back({last.factor, sp.mul(last.factor, sp.inv(m[c - 1].factor, m[c - 1].value), last.value)});
      }
      v.insert(v.end(), w.begin() + static_cast<long>(i + c), w.end());
      const SylWord conj = sp.normalize(u);
      SylWord next = conj;
      const SylWord tinv = sp.inverse(slice(m, c, m.size()));
      next.insert(next.end(), tinv.begin(), tinv.end());
      next.insert(next.end(), v.begin(), v.end());
      next = sp.normalize(next);
      if (next.size() >= w.size()) continue;
      res.trace.push_back({w, next, mt.member, i, mt.matched, conj});
      res.word = std::move(next);
      progressed = true;
      break;
    }
    if (!progressed) break;
  }
  res.area = static_cast<int>(res.trace.size());
  res.in_kernel = res.word.empty();
  return res;
}

}  // namespace

SymmetrizedSet symmetrize(std::shared_ptr<const SyllableSpace> space, const std::vector<SylWord>& relators) {
  SymmetrizedSet s;
  s.space = space;
  std::set<SylWord> all;
  for (const SylWord& r : relators) {
    if (space->is_identity(r)) throw Error(ErrorKind::invalid_word, "empty relator");
    const SylWord core = space->cyclic_core(r).first;
    s.base.push_back(core);
    for (SylWord x : {core, space->inverse(core)}) {
      x = space->cyclic_core(x).first;
      for (std::size_t i = 0; i < std::max<std::size_t>(1, x.size()); ++i) {
        all.insert(x);
        x = space->rotate(x);
      }
    }
  }
  s.members.assign(all.begin(), all.end());
  return s;
}

SymmetrizedSet symmetrize(std::shared_ptr<const SyllableSpace> space, const SylWord& r) {
  return symmetrize(std::move(space), std::vector<SylWord>{r});
}

int common_prefix(const SyllableSpace& space, const SylWord& a, const SylWord& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t j = 0;
  while (j < n && prefixes_agree(space, a, b, j + 1)) ++j;
  return static_cast<int>(j);
}

PieceReport pieces(const SymmetrizedSet& s) {
  PieceReport rep;
  const auto& m = s.members;
  if (m.empty()) return rep;
  rep.min_length = static_cast<int>(m[0].size());
  for (const auto& x : m) rep.min_length = std::min(rep.min_length, static_cast<int>(x.size()));
  for (int i = 0; i < static_cast<int>(m.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(m.size()); ++j) {
      const PiecePair p{i, j, common_prefix(*s.space, m[i], m[j])};
      rep.pairs.push_back(p);
      if (p.length > rep.max_piece) {
        rep.max_piece = p.length;
        rep.argmax = p;
      }
    }
  }
  if (rep.min_length > 0) rep.lambda_star = Rational(rep.max_piece, rep.min_length);
  if (!s.base.empty()) {
    const SylWord& core = s.base.front();
    const int n = static_cast<int>(core.size());
    rep.period = n;
    SylWord rot = core;
    for (int d = 1; d < n; ++d) {
      rot = s.space->rotate(rot);
      if (n % d == 0 && rot == core) {
        rep.period = d;
        break;
      }
    }
    rep.proper_power = rep.period < n;
    rep.periodic_overlap = n - rep.period;
  }
  return rep;
}

CprimeVerdict check_cprime(std::shared_ptr<const SyllableSpace> space, const SylWord& r, int m, Rational lambda) {
  if (m < 1) throw Error(ErrorKind::invalid_argument, "m must be at least 1");
  const SylWord core = space->cyclic_core(r).first;
  const SylWord rm = space->power(core, m);
  CprimeVerdict v;
  v.report = pieces(symmetrize(space, rm));
  v.max_piece = v.report.max_piece;
  v.length = static_cast<int>(rm.size());
  v.lambda = lambda;
  v.lambda_star = v.report.lambda_star;
  v.holds = Rational(v.max_piece) < lambda * Rational(v.length);
  return v;
}

ThinnessConstant compute_M(std::shared_ptr<const GraphOfGroups> gog, const GroupWord& r, unsigned seed) {
  gog->require_valid();
  const GraphOfGroups& g = *gog;
  const Transversals t = fix_transversals(g, seed);
  const CyclicReduction cr = cyclically_reduce(r, g, t);
  ThinnessConstant out;
  out.core = cr.core;
  out.center_vertex = cr.core.base;
  out.r_length = syllable_length(reduce(cr.core, g, t), g, t);
  const GroupWord path = reduce(concat(cr.core, cr.core, g), g, t).word;
  // Edge i of gamma is [w_i e_i] with w_i = g_0 e_1 ... g_{i-1}; its stabilizer
  // is w_i image(bar e_i) w_i^-1.
  std::vector<GroupWord> prefix;
  std::vector<std::vector<GroupWord>> stabs;
  GroupWord w = identity_word(g, path.base);
  for (int i = 0; i < path.num_edges(); ++i) {
    w = concat(w, element_word(g, end_vertex(w, g), path.elems[i]), g);
    prefix.push_back(w);
    std::vector<GroupWord> s;
    for (Elem h : g.image(g.bar(path.edges[i])).elements) {
      s.push_back(reduce(concat(concat(w, element_word(g, end_vertex(w, g), h), g), inverse(w, g), g), g, t).word);
    }
    stabs.push_back(std::move(s));
    GroupWord step = w;
    step.edges.push_back(path.edges[i]);
    step.elems.push_back(g.vertex_group(g.terminus(path.edges[i])).identity());
    w = step;
    out.gamma.push_back(to_string(w, g));
  }
  auto member = [&](const GroupWord& x, std::size_t i) {
    const GroupWord y = reduce(concat(concat(inverse(prefix[i], g), x, g), prefix[i], g), g, t).word;
    return y.edges.empty() && g.image(g.bar(path.edges[i])).contains(y.elems[0]);
  };
  out.k = 1;
  if (stabs.empty()) {
    out.gamma_order = g.vertex_group(cr.core.base).order();
    out.M = out.r_length;
    return out;
  }
  for (const auto& x : stabs.front()) {
    bool all = true;
    for (std::size_t i = 1; i < stabs.size() && all; ++i) all = member(x, i);
    out.gamma_order += all;
  }
  for (const auto& s : stabs) {
    const int order = static_cast<int>(s.size());
    out.edge_orders.push_back(order);
    out.edge_indices.push_back(order / out.gamma_order);
    out.k = std::max(out.k, order / out.gamma_order);
  }
  out.M = out.k * out.r_length;
  return out;
}

bool thinness_condition(Rational lambda, int M) { return Rational(12) * lambda * Rational(M) < Rational(1); }

DehnResult dehn_reduce(const SylWord& w, const SymmetrizedSet& s) {
  require_dehn(s);
  return dehn_unchecked(w, s);
}

SylWord replay_witness(const DehnResult& r, const SymmetrizedSet& s) {
  const SyllableSpace& sp = *s.space;
  SylWord out;
  for (const DehnStep& st : r.trace) {
    out = sp.multiply(out, sp.multiply(sp.multiply(st.conjugator, s.members[st.member]), sp.inverse(st.conjugator)));
  }
  return sp.multiply(out, r.word);
}

WordOracle make_dehn_oracle(const SymmetrizedSet& s) {
  require_dehn(s);
  return [s](const SylWord& w) -> std::optional<bool> { return dehn_unchecked(w, s).in_kernel; };
}

PresentationComplex presentation_complex_ball(std::shared_ptr<const GraphOfGroups> gog,
                                              const std::vector<GroupWord>& relators, int radius,
                                              const WordOracle& wp, unsigned seed, std::size_t cap) {
  PresentationComplex pc;
  pc.radius = radius;
  if (relators.empty()) {
    pc.ball = build_ball(tree_spec(gog, seed), radius, cap);
    pc.complex = complex_from_ball(pc.ball);
    return pc;
  }
  if (gog->num_vertices() != 2 || gog->num_edges() != 2) {
    throw Error(ErrorKind::unsupported, "presentation complexes need a two-vertex one-edge graph of groups");
  }
  auto space = std::make_shared<const SyllableSpace>(gog, seed);
  std::vector<SylWord> rels;
  for (const auto& r : relators) {
    const SylWord core = space->cyclic_core(space->from_word(r)).first;
    if (core.size() < 2) throw Error(ErrorKind::unsupported, "relator lies in a vertex group");
    rels.push_back(core);
  }
  std::vector<PermQuotient> quotients;
  if (space->mode() == SyllableMode::free_product) quotients = find_perm_quotients(*space, rels, 3, seed ^ 0x51edu);
  pc.group = std::make_shared<const QuotientGroup>(space, rels, wp, std::move(quotients));
  const QuotientGroup& G = *pc.group;
  pc.ball = build_ball(quotient_tree_spec(pc.group), radius, cap);
  GGraphBall& ball = pc.ball;

  for (const SylWord& r : rels) {
    std::vector<std::pair<int, Element>> loop;
    SylWord prefix;
    for (const Syllable& x : r) {
      loop.push_back({x.factor, QuotientGroup::encode(prefix)});
      prefix = space->multiply(prefix, {x});
    }
    pc.loops.push_back(std::move(loop));
  }

  auto locate = [&](int tag, const Element& g) {
    if (auto i = ball.find(tag, g)) return *i;
    return ball.add_vertex(tag, g, radius + 1);
  };
  std::vector<std::vector<int>> cycles;
  std::set<std::vector<int>> seen;
  std::vector<std::pair<int, int>> interior;
  for (const auto& [a, b] : ball.graph().edge_list()) {
    if (ball.vertices()[a].complete && ball.vertices()[b].complete) interior.push_back({a, b});
  }
  for (const auto& [ea, eb] : interior) {
    for (const auto& [x, y] : {std::pair{ea, eb}, std::pair{eb, ea}}) {
      const GVertex vx = ball.vertices()[x];
      const auto& stab = *ball.spec().tags[vx.tag].stabilizer.elements;
      for (std::size_t ri = 0; ri < pc.loops.size(); ++ri) {
        const auto& loop = pc.loops[ri];
        const std::size_t n = loop.size();
        for (std::size_t i = 0; i < n; ++i) {
          if (loop[i].first != vx.tag) continue;
          const std::size_t j = (i + 1) % n;
          for (const auto& k : stab) {
            const Element g = G.mul(G.mul(vx.rep, k), G.inv(loop[i].second));
            auto hit = ball.find(loop[j].first, G.mul(g, loop[j].second));
            if (!hit || *hit != y) continue;
            std::vector<int> cyc;
            for (const auto& [tag, h] : loop) cyc.push_back(locate(tag, G.mul(g, h)));
            if (!seen.insert(canonical_cycle(cyc)).second) continue;
            for (std::size_t l = 0; l < n; ++l) ball.add_edge(cyc[l], cyc[(l + 1) % n], 0);
            cycles.push_back(std::move(cyc));
            pc.cell_relator.push_back(static_cast<int>(ri));
            pc.cell_translate.push_back(g);
          }
        }
      }
    }
  }
  pc.complex = complex_from_ball(ball);
  for (auto& c : cycles) pc.complex.add_cell(std::move(c));
  return pc;
}

ThinReport check_M_thin(const TwoComplexBall& x, int M) {
  ThinReport rep;
  std::map<std::pair<int, int>, int> count;
  for (const auto& cell : x.cells2) {
    std::set<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const int a = cell[i], b = cell[(i + 1) % cell.size()];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
    for (const auto& e : edges) ++count[e];
  }
  for (const auto& [a, b] : x.skeleton.edge_list()) {
    if (!x.edge_interior(a, b)) {
      ++rep.boundary_edges;
      continue;
    }
    ++rep.interior_edges;
    const int c = count.count({a, b}) ? count.at({a, b}) : 0;
    if (static_cast<int>(rep.histogram.size()) <= c) rep.histogram.resize(c + 1, 0);
    ++rep.histogram[c];
    if (c > rep.max_count || !rep.argmax) {
      rep.argmax = std::pair{a, b};
      rep.max_count = c;
    }
  }
  rep.thin = rep.max_count <= M;
  return rep;
}

bool ClaimAudit::all_ok() const {
  return (orbit_ok || !orbit_supported) && (injection_ok || !injection_supported) && index_ok;
}

ClaimAudit claim_audit(const PresentationComplex& x, std::shared_ptr<const GraphOfGroups> gog, const GroupWord& r,
                       int m, unsigned seed) {
  ClaimAudit ca;
  const ThinnessConstant thin = compute_M(gog, r, seed);
  ca.k = thin.k;
  ca.orbit_bound = thin.r_length;
  if (!x.group || x.loops.empty()) throw Error(ErrorKind::invalid_argument, "complex has no relator loops");
  const QuotientGroup& G = *x.group;
  const GGraphBall& ball = x.ball;
  const bool free_mode = G.space().mode() == SyllableMode::free_product;

  std::vector<int> d;
  for (const auto& [tag, h] : x.loops.front()) {
    auto i = ball.find(tag, h);
    if (!i) throw Error(ErrorKind::insufficient_radius, "sample 2-cell is not fully in the ball");
    d.push_back(*i);
  }
  const std::size_t n = d.size();
  ca.boundary_edges = static_cast<int>(n);

  if (!free_mode) {
    ca.max_index = thin.edge_indices.empty() ? 1 : *std::max_element(thin.edge_indices.begin(), thin.edge_indices.end());
    ca.index_ok = ca.max_index <= ca.k;
    ca.notes.push_back("edge groups nontrivial: orbit and injection claims skipped, index bound from tree stabilizers");
    return ca;
  }

  // Orbits of boundary edges of the sample cell under <r>, acting by rotation.
  const SylWord core = G.space().cyclic_core(G.space().from_word(r)).first;
  std::map<std::pair<int, int>, int> edge_id;
  for (std::size_t i = 0; i < n; ++i) {
    edge_id[{std::min(d[i], d[(i + 1) % n]), std::max(d[i], d[(i + 1) % n])}] = static_cast<int>(i);
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int a) { return parent[a] == a ? a : parent[a] = root(parent[a]); };
  for (int j = 1; j < m; ++j) {
    const Element g = QuotientGroup::encode(G.space().power(core, j));
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = ball.act(g, d[i]);
      const auto b = ball.act(g, d[(i + 1) % n]);
      if (!a || !b) throw Error(ErrorKind::insufficient_radius, "translate of the sample cell left the ball");
      auto it = edge_id.find({std::min(*a, *b), std::max(*a, *b)});
      if (it == edge_id.end()) {
        ca.notes.push_back("power of r does not stabilize the sample cell");
        continue;
      }
      parent[root(static_cast<int>(i))] = root(it->second);
    }
  }
  std::set<int> roots;
  for (std::size_t i = 0; i < n; ++i) roots.insert(root(static_cast<int>(i)));
  ca.orbit_supported = true;
  ca.edge_orbits = static_cast<int>(roots.size());
  ca.orbit_ok = ca.edge_orbits <= ca.orbit_bound;

  // Injection from cells at the sample edge into edge orbits of the sample cell.
  ca.injection_supported = true;
  const auto cells = x.complex.cells_at_edge(d[0], d[1]);
  ca.sample_cells = static_cast<int>(cells.size());
  std::set<int> images;
  bool ok = true;
  for (int c : cells) {
    const Element gi = G.inv(x.cell_translate[c]);
    const auto a = ball.act(gi, d[0]);
    const auto b = ball.act(gi, d[1]);
    auto it = (a && b) ? edge_id.find({std::min(*a, *b), std::max(*a, *b)}) : edge_id.end();
    if (it == edge_id.end()) {
      ok = false;
      continue;
    }
    if (!images.insert(root(it->second)).second) ok = false;
  }
  ca.injection_ok = ok;

  // [G_e : G_K] for each boundary edge e of the sample cell.
  ca.max_index = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const GVertex& va = ball.vertices()[d[i]];
    const int b = d[(i + 1) % n];
    std::vector<Element> ge;
    for (const auto& k : *ball.spec().tags[va.tag].stabilizer.elements) {
      const Element h = G.conj(va.rep, k);
      if (ball.act(h, b) == b) ge.push_back(h);
    }
    int gk = 0;
    for (const auto& h : ge) {
      bool fixes = true;
      for (int v : d) {
        if (ball.act(h, v) != v) {
          fixes = false;
          break;
        }
      }
      gk += fixes;
    }
    ca.max_index = std::max(ca.max_index, static_cast<int>(ge.size()) / std::max(gk, 1));
  }
  ca.index_ok = ca.max_index <= ca.k;
  return ca;
}

}  // namespace relhyp
