#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "job.hpp"
#include "relhyp/error.hpp"

namespace relhyp::cli {

namespace {

std::string rat(Rational r) {
  std::ostringstream os;
  os << r.numerator() << "/" << r.denominator();
  return os.str();
}

GroupWord power_word(const GraphOfGroups& g, const GroupWord& w, int m) {
  if (m < 1) throw Error(ErrorKind::schema, "$.params.m: must be at least 1");
  GroupWord out = w;
  for (int i = 1; i < m; ++i) out = concat(out, w, g);
  return reduce(out, g, fix_transversals(g)).word;
}

std::vector<GroupWord> job_relators(const Job& job) {
  std::vector<GroupWord> out;
  const auto g = job.gog();
  const int m = job.int_param("m", 1);
  if (job.spec().contains("relators")) {
    const Json& rs = job.spec()["relators"];
    if (!rs.is_array()) throw Error(ErrorKind::schema, "$.relators: expected an array");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      out.push_back(power_word(*g, job.word(rs[i], "$.relators[" + std::to_string(i) + "]"), m));
    }
  } else if (job.spec().contains("relator")) {
    out.push_back(power_word(*g, job.relator(), m));
  }
  return out;
}

SymmetrizedSet job_symmetrized(const Job& job, const std::shared_ptr<const SyllableSpace>& space) {
  std::vector<SylWord> rels;
  for (const auto& r : job_relators(job)) rels.push_back(space->from_word(r));
  if (rels.empty()) {
    SymmetrizedSet s;
    s.space = space;
    return s;
  }
  return symmetrize(space, rels);
}

WordOracle job_oracle(const Job& job) {
  const auto rels = job_relators(job);
  if (rels.empty()) return [](const SylWord& w) -> std::optional<bool> { return w.empty(); };
  auto space = job.space();
  return make_dehn_oracle(job_symmetrized(job, space));
}

Json labels(const GGraphBall& b, const std::vector<int>& ids) {
  Json j = Json::array();
  for (int i : ids) j.push_back(b.label(i));
  return j;
}

Json ball_summary(const GGraphBall& b) {
  Json j;
  j["radius"] = b.radius();
  j["vertices"] = b.size();
  j["edges"] = b.graph().num_edges();
  j["loops_suppressed"] = b.loops_suppressed();
  std::vector<int> per_tag(b.spec().tags.size(), 0);
  for (const auto& v : b.vertices()) ++per_tag[v.tag];
  Json tags = Json::array();
  for (std::size_t t = 0; t < per_tag.size(); ++t) {
    tags.push_back({{"name", b.spec().tags[t].name}, {"stabilizer", b.spec().tags[t].stabilizer.name}, {"count", per_tag[t]}});
  }
  j["tags"] = tags;
  return j;
}

int locate(const GGraphBall& b, const VertexRef& r, const char* what) {
  auto i = b.find(r.tag, r.rep);
  if (!i) throw Error(ErrorKind::insufficient_radius, std::string(what) + " is outside the ball");
  return *i;
}

Json complex_summary(const TwoComplexBall& x) {
  Json j;
  j["cells0"] = x.num_vertices();
  j["cells1"] = x.skeleton.num_edges();
  j["cells2"] = x.cells2.size();
  j["euler_characteristic"] = x.euler_characteristic();
  return j;
}

void export_ball(const Job& job, const GGraphBall& b, Json& result) {
  if (auto p = job.write_output("dot", ball_to_dot(b))) result["dot"] = *p;
  if (auto p = job.write_output("json", ball_to_json(b).dump(2) + "\n")) result["json"] = *p;
}

void export_complex(const Job& job, const TwoComplexBall& x, Json& result) {
  if (auto p = job.write_output("json", complex_to_json(x).dump(2) + "\n")) result["json"] = *p;
  if (auto p = job.write_output("off", complex_to_off(x))) result["off"] = *p;
}

Json cmd_build_tree(const Job& job) {
  const auto g = job.gog();
  const int radius = job.int_param("radius", 4);
  const TreeBall t(g, radius, job.int_param("center", 0), job.cap(), job.seed());
  Json r;
  r["kind"] = to_string(g->kind());
  r["radius"] = radius;
  r["vertices"] = t.vertices().size();
  r["edges"] = t.edges().size();
  r["level_counts"] = t.level_counts();
  std::map<int, std::set<int>> degrees;
  bool match = true;
  for (int i = 0; i < static_cast<int>(t.vertices().size()); ++i) {
    const TreeVertex& v = t.vertices()[i];
    if (v.level >= radius) continue;
    degrees[v.gvertex].insert(t.degree(i));
    match = match && t.degree(i) == t.full_degree(v.gvertex);
  }
  Json d = Json::object();
  for (const auto& [v, s] : degrees) d["v" + std::to_string(v)] = std::vector<int>(s.begin(), s.end());
  r["interior_degrees"] = d;
  r["degrees_match_index_formula"] = match;
  if (auto p = job.write_output("dot", tree_to_dot(t))) r["dot"] = *p;
  if (auto p = job.write_output("json", tree_to_json(t).dump(2) + "\n")) r["json"] = *p;
  r["summary"] = "tree ball radius " + std::to_string(radius) + ": " + std::to_string(t.vertices().size()) + " vertices";
  return r;
}

GGraphBall ca_ball(const Job& job, int radius) {
  const std::string mode = job.params().value("mode", std::string(job.spec().contains("ggraph") ? "coset" : "quotient"));
  if (mode == "coset") return build_ball(job.ggraph(radius).spec, radius, job.cap());
  if (mode != "quotient") throw Error(ErrorKind::schema, "$.params.mode: expected coset or quotient");
  return quotient_tree_ball(job.gog(), job_relators(job), radius, job_oracle(job), job.cap(), job.seed());
}

Json cmd_build_ca(const Job& job) {
  const int radius = job.int_param("radius", 3);
  const GGraphBall b = ca_ball(job, radius);
  Json r = ball_summary(b);
  export_ball(job, b, r);
  r["summary"] = "G-graph ball radius " + std::to_string(radius) + ": " + std::to_string(b.size()) + " vertices";
  return r;
}

Json cmd_check_ca(const Job& job) {
  const auto radii = job.int_list("radii", std::vector<int>{2, 3, 4});
  std::vector<GGraphBall> balls;
  for (int rad : radii) balls.push_back(ca_ball(job, rad));
  std::vector<const GGraphBall*> ptrs;
  for (const auto& b : balls) ptrs.push_back(&b);
  const CaReport rep = check_ca_conditions(ptrs);
  Json r;
  r["radii"] = radii;
  r["conditions"] = Json::array();
  for (const auto& c : rep.conditions) r["conditions"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  r["stabilizer_orders"] = rep.stabilizer_orders;
  r["degree_growth"] = rep.degree_growth;
  r["all_pass"] = rep.all_pass();
  r["summary"] = std::string("Cayley-Abels conditions: ") + (rep.all_pass() ? "all pass" : "some fail");
  return r;
}

Json cmd_fineness(const Job& job) {
  const auto radii = job.int_list("radii");
  const int top = *std::max_element(radii.begin(), radii.end());
  const auto g = job.ggraph(top);
  const VertexRef u = job.vertex_ref(g, job.spec().value("u", Json::object()), "$.u");
  const VertexRef v = job.vertex_ref(g, job.spec().value("v", Json::object()), "$.v");
  const int k = job.int_param("k");
  const std::size_t cap = job.cap();
  const FinenessReport rep = fineness_report([&](int rad) { return build_ball(g.spec, rad, cap); }, u, v, k, radii);
  Json r;
  r["query"] = {{"u", g.spec.tags[u.tag].name + "@" + g.spec.group->format(u.rep)},
                {"v", g.spec.tags[v.tag].name + "@" + g.spec.group->format(v.rep)},
                {"k", k}};
  r["radii"] = rep.radii;
  r["cardinalities"] = rep.cardinalities;
  r["partial"] = rep.partial;
  r["verdict"] = to_string(rep.verdict);
  r["witnesses"] = rep.witnesses;
  r["summary"] = std::string("escaping set verdict ") + to_string(rep.verdict);
  return r;
}

Json cmd_wz_audit(const Job& job) {
  const int radius = job.int_param("radius", 9);
  const auto g = job.ggraph(radius);
  if (g.attachments.empty()) throw Error(ErrorKind::schema, "$.ggraph.attach: a cone attachment is required");
  const Attachment& att = g.attachments.back();
  const GGraphBall gamma = build_ball(g.base, radius, job.cap());
  const int a = locate(gamma, job.vertex_ref(g, job.spec().value("a", Json::object()), "$.a"), "a");
  const int b = locate(gamma, job.vertex_ref(g, job.spec().value("b", Json::object()), "$.b"), "b");
  const int kdeg = static_cast<int>(att.ends.size());
  const int n = job.int_param("n", kdeg * att.ell);
  const WzReport rep = wz_chain(gamma, a, b, n, att, job.bool_param("corrupt", false));
  Json r;
  r["cone_degree"] = kdeg;
  r["ell"] = att.ell;
  r["n"] = n;
  r["levels"] = Json::array();
  for (const auto& l : rep.levels) {
    r["levels"].push_back({{"j", l.j}, {"W", labels(gamma, l.w)}, {"Z", labels(gamma, l.z)}});
  }
  r["W0"] = labels(gamma, rep.w0);
  r["chain_holds"] = rep.chain_holds;
  r["finite"] = rep.finite;
  r["violation"] = rep.violation;
  r["summary"] = std::string("W/Z chain ") + (rep.chain_holds ? "holds" : "violated");
  return r;
}

Attachment job_attachment(const Job& job, const Job::GGraph& g, const GGraphBall& gamma) {
  if (!job.spec().contains("attach_edge")) throw Error(ErrorKind::schema, "$.attach_edge: missing");
  return attach_edge_orbit(gamma, job.attach_spec(g, g.spec, job.spec()["attach_edge"], "$.attach_edge"));
}

Json cmd_attach(const Job& job) {
  const int radius = job.int_param("radius", 6);
  const auto g = job.ggraph(radius);
  const GGraphBall gamma = build_ball(g.spec, radius, job.cap());
  const Attachment att = job_attachment(job, g, gamma);
  Json r;
  r["outside_hypotheses"] = att.outside_hypotheses;
  Json ends = Json::array();
  for (const auto& e : att.ends) ends.push_back(att.delta.tags[e.tag].name + "@" + gamma.group().format(e.rep));
  r["ends"] = ends;
  Json lengths = Json::array();
  for (const auto& row : att.alpha) {
    Json line = Json::array();
    for (const auto& p : row) line.push_back(static_cast<int>(p.size()) - 1);
    lengths.push_back(line);
  }
  r["alpha_lengths"] = lengths;
  r["ell"] = att.ell;
  if (!att.outside_hypotheses) {
    const GGraphBall delta = build_ball(att.delta, radius, job.cap());
    r["delta"] = ball_summary(delta);
    export_ball(job, delta, r);
  }
  r["summary"] = "attached " + att.spec.name + " with ell " + std::to_string(att.ell);
  return r;
}

Json cmd_qi(const Job& job) {
  const int radius = job.int_param("radius", 8);
  const auto g = job.ggraph(radius);
  const GGraphBall gamma = build_ball(g.spec, radius, job.cap());
  const Attachment att = job_attachment(job, g, gamma);
  const GGraphBall delta = build_ball(att.delta, radius, job.cap());
  const QiCertificate c = qi_certificate(gamma, delta, att.ell);
  Json r;
  r["ell"] = c.ell;
  r["ell_alpha"] = att.ell;
  r["pairs"] = c.pairs;
  r["ok"] = c.ok;
  r["detail"] = c.detail;
  if (c.counterexample) r["counterexample"] = labels(gamma, {c.counterexample->first, c.counterexample->second});
  r["summary"] = "quasi-isometry constant " + std::to_string(c.ell) + (c.ok ? " (verified)" : " (failed)");
  return r;
}

Json cmd_symmetrize(const Job& job) {
  const auto space = job.space();
  const SymmetrizedSet s = job_symmetrized(job, space);
  Json r;
  Json members = Json::array();
  for (const auto& m : s.members) members.push_back(space->format(m));
  r["members"] = members;
  r["count"] = s.members.size();
  r["summary"] = std::to_string(s.members.size()) + " members";
  return r;
}

Json piece_json(const PieceReport& p, const SymmetrizedSet& s) {
  Json j;
  j["max_piece"] = p.max_piece;
  j["min_length"] = p.min_length;
  j["lambda_star"] = rat(p.lambda_star);
  if (p.argmax) {
    j["argmax"] = {s.space->format(s.members[p.argmax->i]), s.space->format(s.members[p.argmax->j])};
  }
  j["proper_power"] = p.proper_power;
  j["period"] = p.period;
  j["periodic_overlap"] = p.periodic_overlap;
  return j;
}

Json cmd_cprime(const Job& job) {
  const auto space = job.space();
  const GroupWord r0 = job.relator();
  const int m = job.int_param("m", 1);
  const Rational lambda = job.rational_param("lambda");
  const CprimeVerdict v = check_cprime(space, space->from_word(r0), m, lambda);
  const ThinnessConstant thin = compute_M(job.gog(), r0, job.seed());
  Json r;
  r["m"] = m;
  r["lambda"] = rat(lambda);
  r["length"] = v.length;
  r["holds"] = v.holds;
  SymmetrizedSet s = symmetrize(space, space->power(space->from_word(r0), m));
  r["pieces"] = piece_json(v.report, s);
  r["M"] = thin.M;
  r["thinness_condition"] = thinness_condition(lambda, thin.M);
  r["summary"] = std::string("C'(") + rat(lambda) + ") " + (v.holds ? "holds" : "fails");
  return r;
}

Json cmd_compute_m(const Job& job) {
  const auto g = job.gog();
  const ThinnessConstant t = compute_M(g, job.relator(), job.seed());
  Json r;
  r["core"] = to_string(t.core, *g);
  r["r_length"] = t.r_length;
  r["k"] = t.k;
  r["M"] = t.M;
  r["gamma"] = t.gamma;
  r["edge_orders"] = t.edge_orders;
  r["edge_indices"] = t.edge_indices;
  r["gamma_stabilizer_order"] = t.gamma_order;
  r["summary"] = "M = " + std::to_string(t.k) + " * " + std::to_string(t.r_length) + " = " + std::to_string(t.M);
  return r;
}

Json cmd_dehn(const Job& job) {
  const auto space = job.space();
  const SymmetrizedSet s = job_symmetrized(job, space);
  if (!job.spec().contains("words") || !job.spec()["words"].is_array()) {
    throw Error(ErrorKind::schema, "$.words: expected an array of words");
  }
  Json out = Json::array();
  int kernel = 0;
  const Json& ws = job.spec()["words"];
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const SylWord w = space->from_word(job.word(ws[i], "$.words[" + std::to_string(i) + "]"));
    const DehnResult d = dehn_reduce(w, s);
    kernel += d.in_kernel;
    out.push_back({{"word", space->format(w)},
                   {"reduced", space->format(d.word)},
                   {"in_kernel", d.in_kernel},
                   {"area", d.area},
                   {"witness_replays", space->equal(replay_witness(d, s), w)}});
  }
  Json r;
  r["results"] = out;
  r["summary"] = std::to_string(kernel) + " of " + std::to_string(ws.size()) + " words in the kernel";
  return r;
}

PresentationComplex job_complex(const Job& job) {
  return presentation_complex_ball(job.gog(), job_relators(job), job.int_param("radius", 2), job_oracle(job),
                                   job.seed(), job.cap());
}

Json cmd_px_complex(const Job& job) {
  const PresentationComplex pc = job_complex(job);
  Json r = complex_summary(pc.complex);
  r["radius"] = pc.radius;
  export_complex(job, pc.complex, r);
  r["summary"] = std::to_string(pc.complex.cells2.size()) + " 2-cells";
  return r;
}

Json cmd_m_thin(const Job& job) {
  const PresentationComplex pc = job_complex(job);
  const int M = job.params().contains("M") ? job.int_param("M") : compute_M(job.gog(), job.relator(), job.seed()).M;
  const ThinReport t = check_M_thin(pc.complex, M);
  Json r;
  r["M"] = M;
  r["thin"] = t.thin;
  r["max_count"] = t.max_count;
  r["interior_edges"] = t.interior_edges;
  r["boundary_edges_excluded"] = t.boundary_edges;
  r["histogram"] = t.histogram;
  if (t.argmax) r["argmax"] = {pc.complex.labels[t.argmax->first], pc.complex.labels[t.argmax->second]};
  r["summary"] = std::string("M-thin with M = ") + std::to_string(M) + ": " + (t.thin ? "yes" : "no");
  return r;
}

Json cmd_claim_audit(const Job& job) {
  const PresentationComplex pc = job_complex(job);
  const ClaimAudit a = claim_audit(pc, job.gog(), job.relator(), job.int_param("m", 1), job.seed());
  Json r;
  r["orbit"] = {{"supported", a.orbit_supported}, {"edge_orbits", a.edge_orbits}, {"bound", a.orbit_bound}, {"ok", a.orbit_ok}};
  r["injection"] = {{"supported", a.injection_supported}, {"cells_at_sample_edge", a.sample_cells}, {"ok", a.injection_ok}};
  r["index"] = {{"max_index", a.max_index}, {"k", a.k}, {"ok", a.index_ok}};
  r["notes"] = a.notes;
  r["all_ok"] = a.all_ok();
  r["summary"] = std::string("claim audit ") + (a.all_ok() ? "passes" : "fails");
  return r;
}

Json cmd_omega_k(const Job& job) {
  const TwoComplexBall x = omega_k(job.graph_complex(), job.int_param("k"), job.cap());
  Json r = complex_summary(x);
  export_complex(job, x, r);
  r["summary"] = std::to_string(x.cells2.size()) + " 2-cells";
  return r;
}

Json cmd_link(const Job& job) {
  const TwoComplexBall x = omega_k(job.graph_complex(), job.int_param("k", 3), job.cap());
  const int v = job.int_param("vertex", 0);
  if (v < 0 || v >= x.num_vertices()) throw Error(ErrorKind::schema, "$.params.vertex: out of range");
  const LinkGraph l = link(x, v);
  const LinkCorrespondence c = link_component_correspondence(x, v);
  Json r;
  r["link_vertices"] = l.edge_ends;
  Json corners = Json::array();
  for (const auto& [a, b] : l.corners) corners.push_back({l.edge_ends[a], l.edge_ends[b]});
  r["corners"] = corners;
  r["partial"] = l.partial;
  r["link_components"] = c.link_components;
  r["puncture_components"] = c.puncture_components;
  r["bijective"] = c.bijective;
  r["boundary_interference"] = c.boundary_interference;
  r["summary"] = "link with " + std::to_string(l.edge_ends.size()) + " vertices and " + std::to_string(l.corners.size()) + " corners";
  return r;
}

Json cmd_pi1(const Job& job) {
  const TwoComplexBall x = omega_k(job.graph_complex(), job.int_param("k", 3), job.cap());
  const Presentation p = pi1_presentation(x);
  const TrivialityReport t = bounded_trivial(p, job.int_param("effort", 10'000));
  Json r;
  r["generators"] = p.num_generators;
  r["relators"] = p.relators.size();
  r["verdict"] = to_string(t.verdict);
  r["h1"] = t.h1.to_string();
  r["rewrites"] = t.rewrites;
  r["remaining_generators"] = t.remaining_generators;
  r["summary"] = std::string("simply connected: ") + to_string(t.verdict);
  return r;
}

std::vector<int> flatten(const SylWord& w) {
  std::vector<int> out;
  for (const auto& s : w) {
    out.push_back(s.factor);
    out.push_back(static_cast<int>(s.value));
  }
  return out;
}

Json cmd_dehn_sample(const Job& job) {
  const auto space = job.space();
  const SymmetrizedSet s = job_symmetrized(job, space);
  const auto lengths = job.int_list("lengths");
  const int samples = job.int_param("samples", 200);
  const long limit = job.int_param("exhaustive_limit", 20'000);
  const std::uint64_t seed = job.sample_seed();
  if (space->mode() != SyllableMode::free_product) throw Error(ErrorKind::unsupported, "sampling needs the free-product view");
  const int nf = space->num_factors();
  for (int f = 0; f < nf; ++f)
    if (!space->factor_finite(f)) throw Error(ErrorKind::unsupported, "sampling needs finite factors");
  auto words = [&](int n, std::uint64_t sd) {
    WordBatch batch;
    // Count normal forms of length n: first syllable any factor, then any other.
    long double count = 0;
    for (int f = 0; f < nf; ++f) {
      long double c = space->factor_order(f) - 1;
      std::vector<long double> per(nf, 0);
      per[f] = c;
      for (int i = 1; i < n; ++i) {
        std::vector<long double> next(nf, 0);
        for (int a = 0; a < nf; ++a)
          for (int b = 0; b < nf; ++b)
            if (a != b) next[b] += per[a] * (space->factor_order(b) - 1);
        per = next;
      }
      for (auto x : per) count += x;
    }
    if (count <= limit) {
      batch.exhaustive = true;
      SylWord cur;
      std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == n) {
          batch.words.push_back(flatten(cur));
          return;
        }
        for (int f = 0; f < nf; ++f) {
          if (!cur.empty() && cur.back().factor == f) continue;
          for (int x = 1; x < space->factor_order(f); ++x) {
            cur.push_back({f, x});
            rec();
            cur.pop_back();
          }
        }
      };
      rec();
      return batch;
    }
    std::mt19937_64 rng(sd);
    auto uniform = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
    auto random_word = [&](int len) {
      SylWord w;
      for (int i = 0; i < len; ++i) {
        int f = uniform(0, nf - 1);
        if (!w.empty() && w.back().factor == f) f = (f + 1) % nf;
        w.push_back({f, uniform(1, space->factor_order(f) - 1)});
      }
      return w;
    };
    for (int attempt = 0; attempt < 50 * samples && static_cast<int>(batch.words.size()) < samples; ++attempt) {
      if (s.members.empty()) break;
      SylWord w;
      const int t = uniform(1, 3);
      for (int i = 0; i < t; ++i) {
        const SylWord c = random_word(uniform(0, std::max(0, n / 2)));
        const SylWord& m = s.members[uniform(0, static_cast<int>(s.members.size()) - 1)];
        w = space->multiply(w, space->multiply(space->multiply(c, m), space->inverse(c)));
      }
      if (!w.empty() && static_cast<int>(w.size()) <= n) batch.words.push_back(flatten(w));
    }
    return batch;
  };
  auto area = [&](const std::vector<int>& flat) -> std::optional<int> {
    SylWord w;
    for (std::size_t i = 0; i + 1 < flat.size(); i += 2) w.push_back({flat[i], flat[i + 1]});
    const DehnResult d = dehn_reduce(w, s);
    if (!d.in_kernel) return std::nullopt;
    return d.area;
  };
  const DehnFunctionTable t = dehn_function_sample(lengths, words, area, seed);
  Json r;
  r["seed"] = t.seed;
  r["rows"] = Json::array();
  for (const auto& row : t.rows) {
    r["rows"].push_back({{"length", row.length},
                         {"mode", row.exhaustive ? "exhaustive" : "sampled, length <= n"},
                         {"candidates", row.candidates},
                         {"kernel_words", row.kernel_words},
                         {"max_area", row.max_area}});
  }
  std::ostringstream slope;
  slope.precision(6);
  slope << t.slope;
  r["slope"] = slope.str();
  r["summary"] = "area/length slope " + slope.str();
  return r;
}

Json cmd_hyp_estimate(const Job& job) {
  const TwoComplexBall x = job.graph_complex();
  const HyperbolicityEstimate e = hyperbolicity_estimate(
      x.skeleton, static_cast<std::size_t>(job.int_param("exhaustive_limit", 80)), job.int_param("samples", 200'000),
      job.sample_seed());
  Json r;
  r["label"] = "ESTIMATE";
  r["twice_delta"] = e.twice_delta;
  r["delta"] = std::to_string(e.twice_delta / 2) + (e.twice_delta % 2 ? ".5" : "");
  r["tuples"] = e.tuples;
  r["sampled"] = e.sampled;
  r["seed"] = e.seed;
  r["witness"] = e.witness;
  r["summary"] = "four-point delta estimate " + r["delta"].get<std::string>();
  return r;
}

}  // namespace

Json run_command(const Job& job) {
  static const std::map<std::string, std::function<Json(const Job&)>> table = {
      {"build-tree", cmd_build_tree},   {"build-ca", cmd_build_ca},       {"check-ca", cmd_check_ca},
      {"fineness", cmd_fineness},       {"wz-audit", cmd_wz_audit},       {"attach", cmd_attach},
      {"qi", cmd_qi},                   {"symmetrize", cmd_symmetrize},   {"cprime", cmd_cprime},
      {"compute-m", cmd_compute_m},     {"dehn", cmd_dehn},               {"px-complex", cmd_px_complex},
      {"m-thin", cmd_m_thin},           {"claim-audit", cmd_claim_audit}, {"omega-k", cmd_omega_k},
      {"link", cmd_link},               {"pi1", cmd_pi1},                 {"dehn-sample", cmd_dehn_sample},
      {"hyp-estimate", cmd_hyp_estimate},
  };
  auto it = table.find(job.command());
  if (it == table.end()) throw Error(ErrorKind::schema, "$.command: unknown command '" + job.command() + "'");
  return it->second(job);
}

}  // namespace relhyp::cli
