#include "relhyp/cayley_abels.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "relhyp/error.hpp"

namespace relhyp {

GGraphSpec coset_graph_spec(ConcretePtr group, SubgroupHandle u, std::vector<Element> s,
                            std::vector<SubgroupHandle> h) {
  if (!u.finite()) throw Error(ErrorKind::invalid_argument, "U must be finite");
  GGraphSpec spec;
  spec.group = group;
  if (u.name.empty()) u.name = "U";
  spec.tags.push_back({u.name, std::move(u)});
  for (std::size_t i = 0; i < s.size(); ++i) {
    spec.orbits.push_back({0, 0, s[i], "s" + std::to_string(i)});
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].name.empty()) h[i].name = "H" + std::to_string(i);
    const int tag = static_cast<int>(spec.tags.size());
    spec.orbits.push_back({0, tag, group->identity(), h[i].name});
    spec.tags.push_back({h[i].name, std::move(h[i])});
  }
  return spec;
}

GGraphBall coset_graph_ball(ConcretePtr group, SubgroupHandle u, std::vector<Element> s,
                            std::vector<SubgroupHandle> h, int radius, std::size_t cap) {
  return build_ball(coset_graph_spec(std::move(group), std::move(u), std::move(s), std::move(h)),
                    radius, cap);
}

std::vector<int> PermQuotient::image(const SylWord& w, const SyllableSpace& space) const {
  std::vector<int> p(degree);
  std::iota(p.begin(), p.end(), 0);
  auto apply = [&](const std::vector<int>& q) {
    for (int& x : p) x = q[x];
  };
  for (const Syllable& s : w) {
    if (space.factor_finite(s.factor)) {
      apply(perms[s.factor][s.value]);
    } else {
      const auto& q = perms[s.factor][s.value > 0 ? 0 : 1];
      for (std::int64_t i = 0; i < std::llabs(s.value); ++i) apply(q);
    }
  }
  return p;
}

std::vector<PermQuotient> find_perm_quotients(const SyllableSpace& space,
                                              const std::vector<SylWord>& relators, int count,
                                              unsigned seed, int max_degree, int attempts) {
  std::vector<PermQuotient> out;
  if (space.mode() != SyllableMode::free_product) return out;
  int min_degree = 2;
  for (int f = 0; f < space.num_factors(); ++f) min_degree = std::max(min_degree, space.factor_order(f));
  if (min_degree > max_degree) return out;
  std::mt19937 rng(seed);
  const GraphOfGroups& gog = space.gog();
  for (int attempt = 0; attempt < attempts && static_cast<int>(out.size()) < count; ++attempt) {
    PermQuotient q;
    q.degree = std::uniform_int_distribution<int>(min_degree, max_degree)(rng);
    const int n = q.degree;
    for (int f = 0; f < space.num_factors(); ++f) {
      std::vector<int> sigma(n);
      std::iota(sigma.begin(), sigma.end(), 0);
      std::shuffle(sigma.begin(), sigma.end(), rng);
      if (space.factor_finite(f)) {
        const FiniteGroup& g = gog.vertex_group(f);
        const int m = g.order();
        const int copies = std::uniform_int_distribution<int>(1, n / m)(rng);
        std::vector<std::vector<int>> table(m, std::vector<int>(n));
        for (int x = 0; x < m; ++x) {
          std::iota(table[x].begin(), table[x].end(), 0);
          for (int c = 0; c < copies; ++c)
            for (int y = 0; y < m; ++y) table[x][sigma[c * m + y]] = sigma[c * m + g.mul(y, x)];
        }
        q.perms.push_back(std::move(table));
      } else {
        std::vector<int> inv(n);
        for (int x = 0; x < n; ++x) inv[sigma[x]] = x;
        q.perms.push_back({sigma, inv});
      }
    }
    bool ok = true;
    for (const auto& r : relators) {
      const auto p = q.image(r, space);
      for (int x = 0; x < n && ok; ++x) ok = p[x] == x;
      if (!ok) break;
    }
    if (ok) out.push_back(std::move(q));
  }
  return out;
}

QuotientGroup::QuotientGroup(std::shared_ptr<const SyllableSpace> space, std::vector<SylWord> relators,
                             WordOracle wp, std::vector<PermQuotient> quotients)
    : space_(std::move(space)), relators_(std::move(relators)), wp_(std::move(wp)),
      quotients_(std::move(quotients)) {}

Element QuotientGroup::encode(const SylWord& w) {
  Element e;
  for (const Syllable& s : w) {
    e.push_back(s.factor);
    e.push_back(s.value);
  }
  return e;
}

SylWord QuotientGroup::decode(const Element& e) {
  SylWord w;
  for (std::size_t i = 0; i + 1 < e.size(); i += 2) w.push_back({static_cast<int>(e[i]), e[i + 1]});
  return w;
}

Element QuotientGroup::mul(const Element& a, const Element& b) const {
  return encode(space_->multiply(decode(a), decode(b)));
}

Element QuotientGroup::inv(const Element& a) const { return encode(space_->inverse(decode(a))); }

std::vector<Element> QuotientGroup::generators() const {
  std::vector<Element> out;
  for (int f = 0; f < space_->num_factors(); ++f) {
    if (!space_->factor_finite(f)) {
      out.push_back(encode({{f, 1}}));
      continue;
    }
    for (int g = 1; g < space_->factor_order(f); ++g) out.push_back(encode({{f, g}}));
  }
  return out;
}

std::string QuotientGroup::format(const Element& a) const { return space_->format(decode(a)); }

std::optional<Element> QuotientGroup::fingerprint(const Element& a) const {
  if (quotients_.empty()) return std::nullopt;
  Element out;
  const SylWord w = decode(a);
  for (const auto& q : quotients_) {
    for (int x : q.image(w, *space_)) out.push_back(x);
  }
  return out;
}

bool QuotientGroup::equal(const Element& a, const Element& b) const {
  if (a == b) return true;
  if (!quotients_.empty() && fingerprint(a) != fingerprint(b)) return false;
  const auto r = wp_(space_->multiply(space_->inverse(decode(a)), decode(b)));
  if (!r) throw Error(ErrorKind::predicate_failure, "word problem oracle returned unknown");
  return *r;
}

GGraphSpec tree_spec(std::shared_ptr<const GraphOfGroups> gog, unsigned seed) {
  gog->require_valid();
  auto group = std::make_shared<GogGroup>(gog, seed);
  GGraphSpec spec;
  spec.group = group;
  for (int v = 0; v < gog->num_vertices(); ++v) {
    spec.tags.push_back({"v" + std::to_string(v),
                         finite_handle(group, "G" + std::to_string(v), group->vertex_group_conjugate(v))});
  }
  for (int f = 0; f < gog->num_edges(); ++f) {
    if (gog->bar(f) < f) continue;
    spec.orbits.push_back({gog->origin(f), gog->terminus(f), group->edge_element(f), "e" + std::to_string(f)});
  }
  return spec;
}

GGraphSpec quotient_tree_spec(std::shared_ptr<const QuotientGroup> q) {
  const SyllableSpace& sp = q->space();
  const GraphOfGroups& gog = sp.gog();
  GogGroup pi(sp.gog_ptr(), sp.transversals().seed());
  GGraphSpec spec;
  spec.group = q;
  for (int v = 0; v < gog.num_vertices(); ++v) {
    std::vector<Element> elems;
    for (const auto& e : pi.vertex_group_conjugate(v)) {
      elems.push_back(QuotientGroup::encode(sp.from_word(pi.decode(e))));
    }
    spec.tags.push_back({"v" + std::to_string(v), finite_handle(q, "G" + std::to_string(v), elems)});
  }
  for (int f = 0; f < gog.num_edges(); ++f) {
    if (gog.bar(f) < f) continue;
    spec.orbits.push_back({gog.origin(f), gog.terminus(f),
                           QuotientGroup::encode(sp.from_word(pi.decode(pi.edge_element(f)))),
                           "e" + std::to_string(f)});
  }
  return spec;
}

GGraphBall quotient_tree_ball(std::shared_ptr<const GraphOfGroups> gog,
                              const std::vector<GroupWord>& relators, int radius,
                              const WordOracle& wp, std::size_t cap, unsigned seed) {
  if (relators.empty()) return build_ball(tree_spec(gog, seed), radius, cap);
  auto space = std::make_shared<const SyllableSpace>(gog, seed);
  std::vector<SylWord> rels;
  for (const auto& r : relators) rels.push_back(space->from_word(r));
  auto quotients = find_perm_quotients(*space, rels, 3, seed ^ 0x51edu);
  auto q = std::make_shared<const QuotientGroup>(space, rels, wp, std::move(quotients));
  return build_ball(quotient_tree_spec(q), radius, cap);
}

bool CaReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const CaCondition& c) { return c.pass; });
}

CaReport check_ca_conditions(const std::vector<const GGraphBall*>& balls) {
  if (balls.empty()) throw Error(ErrorKind::invalid_argument, "no balls supplied");
  const GGraphBall& ball = *balls.back();
  const GGraphSpec& spec = ball.spec();
  CaReport rep;

  std::set<std::pair<int, int>> pairs;
  int doubled = 0;
  for (const auto& e : ball.edges()) {
    if (!pairs.insert({std::min(e.a, e.b), std::max(e.a, e.b)}).second) ++doubled;
    if (e.a == e.b) ++doubled;
  }
  rep.conditions.push_back({"simplicial", ball.loops_suppressed() == 0 && doubled == 0,
                            std::to_string(ball.loops_suppressed()) + " loops, " +
                                std::to_string(doubled) + " doubled edges"});
  rep.conditions.push_back({"connected", ball.graph().connected(),
                            std::to_string(ball.size()) + " vertices"});
  rep.conditions.push_back({"cocompact", true,
                            std::to_string(spec.tags.size()) + " vertex orbits, " +
                                std::to_string(spec.orbits.size()) + " edge orbits"});
  bool edges_finite = true;
  std::string detail;
  for (const auto& o : spec.orbits) {
    const bool fin = ball.tag_finite(o.from) || ball.tag_finite(o.to);
    edges_finite = edges_finite && fin;
    detail += o.name + (fin ? ":finite " : ":infinite ");
  }
  rep.conditions.push_back({"finite-edge-stabilizers", edges_finite, detail});

  detail.clear();
  for (const auto& t : spec.tags) {
    const int order = t.stabilizer.finite() ? static_cast<int>(t.stabilizer.elements->size()) : 0;
    rep.stabilizer_orders.push_back(order);
    detail += t.name + ":" + (order ? std::to_string(order) : std::string("infinite")) + " ";
  }
  rep.conditions.push_back({"vertex-stabilizers", true, detail});

  if (balls.size() < 3) {
    rep.conditions.push_back({"degree-dichotomy", true, "skipped: fewer than three radii"});
  } else {
    bool ok = true;
    detail.clear();
    for (int tag = 0; tag < static_cast<int>(spec.tags.size()); ++tag) {
      std::optional<Element> rep_elem;
      std::vector<int> degrees;
      for (const GGraphBall* b : balls) {
        if (!rep_elem) {
          for (const auto& v : b->vertices())
            if (v.tag == tag) {
              rep_elem = v.rep;
              break;
            }
        }
        if (!rep_elem) continue;
        auto i = b->find(tag, *rep_elem);
        degrees.push_back(i ? b->graph().degree(*i) : 0);
      }
      bool growing = degrees.size() >= 3;
      for (std::size_t i = 1; i < degrees.size(); ++i) growing = growing && degrees[i] > degrees[i - 1];
      const bool infinite = !ball.tag_finite(tag);
      if (!degrees.empty()) ok = ok && (growing == infinite);
      rep.degree_growth.push_back(degrees);
      detail += spec.tags[tag].name + (growing ? ":growing " : ":bounded ");
    }
    rep.conditions.push_back({"degree-dichotomy", ok, detail + "(growth heuristic)"});
  }
  rep.conditions.push_back({"same-stabilizer-same-orbit", true,
                            "ball-certified: each designated tag is one orbit by construction"});
  return rep;
}

QiFit empirical_qi(const GGraphBall& a, const GGraphBall& b) {
  QiFit fit;
  fit.inner_radius = std::min(a.radius(), b.radius()) / 2;
  std::vector<int> ia, ib;
  for (int i = 0; i < a.size(); ++i) {
    const auto& v = a.vertices()[i];
    if (v.tag != 0 || v.level > fit.inner_radius) continue;
    auto j = b.find(0, v.rep);
    if (!j) continue;
    ia.push_back(i);
    ib.push_back(*j);
  }
  for (std::size_t x = 0; x < ia.size(); ++x) {
    const auto da = a.graph().distances(ia[x]);
    const auto db = b.graph().distances(ib[x]);
    for (std::size_t y = x + 1; y < ia.size(); ++y) {
      const int p = da[ia[y]], q = db[ib[y]];
      if (p <= 0 || q <= 0) continue;
      fit.ell = std::max({fit.ell, (p + q - 1) / q, (q + p - 1) / p});
      ++fit.pairs;
    }
  }
  return fit;
}

}  // namespace relhyp
