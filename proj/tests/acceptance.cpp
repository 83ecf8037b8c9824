// One PASS/FAIL line per acceptance criterion. Exits nonzero only when a
// criterion fails that is not listed as a known failure.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "relhyp/complexes.hpp"

using namespace relhyp;
using namespace fixture;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass_ = false;
    if (++count_ > 5) return;
    if (!failures_.empty()) failures_ += "; ";
    failures_ += what;
  }
  Outcome done(const std::string& summary) const {
    if (pass_) return {true, summary};
    return {false, count_ > 5 ? failures_ + "; and " + std::to_string(count_ - 5) + " more" : failures_};
  }

 private:
  bool pass_ = true;
  int count_ = 0;
  std::string failures_;
};

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

int find_root(std::vector<int>& p, int x) { return p[x] == x ? x : p[x] = find_root(p, p[x]); }

Outcome biregularity() {
  Checker c;
  const auto g = sl2z();
  const int d0 = g->vertex_group(0).order() / g->edge_group(0).order();
  const int d1 = g->vertex_group(1).order() / g->edge_group(0).order();
  // BFS on the abstract biregular tree: level l+1 gets (degree - 1) children per vertex.
  std::vector<int> oracle{1};
  long long frontier = 1;
  for (int l = 1; l <= 6; ++l) {
    const int parent = (l - 1) % 2 == 0 ? d0 : d1;
    frontier *= l == 1 ? parent : parent - 1;
    oracle.push_back(static_cast<int>(frontier));
  }
  const TreeBall t(g, 6);
  c.expect(oracle == std::vector<int>{1, 2, 4, 4, 8, 8, 16}, "index-formula oracle gives " + join(oracle));
  c.expect(t.level_counts() == oracle, "level counts " + join(t.level_counts()));
  const int n = static_cast<int>(t.vertices().size());
  c.expect(static_cast<int>(t.edges().size()) == n - 1, "edge count");
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : t.edges()) {
    const int a = find_root(parent, e.a), b = find_root(parent, e.b);
    c.expect(a != b, "cycle in ball");
    parent[a] = b;
  }
  for (int i = 0; i < n; ++i) {
    const auto& v = t.vertices()[i];
    if (v.level < 6) c.expect(t.degree(i) == (v.gvertex == 0 ? d0 : d1), "degree at vertex " + std::to_string(i));
  }
  return c.done("level counts " + join(t.level_counts()) + ", interior degrees (2,3)");
}

Outcome normal_forms() {
  Checker c;
  const GraphOfGroups g = make_sl2z_amalgam();
  const Transversals t = fix_transversals(g);
  std::mt19937_64 rng(2024);
  int agree = 0, equal_pairs = 0, sweep_ok = 0;
  for (int i = 0; i < 10'000; ++i) {
    const GroupWord u = oracle::random_loop(g, 4, rng);
    GroupWord w = oracle::random_loop(g, 4, rng);
    if (i % 2 == 0) w = concat(concat(concat(u, amalgam_word(g, {{0, 2}, {1, 3}}), g), inverse(u, g), g), u, g);
    const bool eq = words_equal(u, w, g, t);
    const bool oracle_eq = oracle::evaluate_sl2z(u, g) == oracle::evaluate_sl2z(w, g);
    agree += eq == oracle_eq;
    equal_pairs += oracle_eq;
    sweep_ok += reduce(u, g, t, Sweep::left_to_right) == reduce(u, g, t, Sweep::right_to_left) &&
                reduce(w, g, t, Sweep::left_to_right) == reduce(w, g, t, Sweep::right_to_left);
  }
  c.expect(agree == 10'000, std::to_string(agree) + "/10000 agree with the matrix oracle");
  c.expect(sweep_ok == 10'000, std::to_string(sweep_ok) + "/10000 sweep-invariant");
  c.expect(equal_pairs >= 1'000 && equal_pairs <= 9'000, "degenerate sample");
  return c.done("10000/10000 agree (" + std::to_string(equal_pairs) + " equal pairs), sweep-invariant");
}

Outcome fineness() {
  Checker c;
  const ConedTree ct = coned_tree(9);
  std::map<int, GGraphBall> cache;
  auto family = [&](int r) {
    auto it = cache.find(r);
    if (it == cache.end()) it = cache.emplace(r, build_ball(ct.att.delta, r)).first;
    return it->second;
  };
  const std::vector<int> radii{6, 7, 8, 9};
  const GGraphBall b6 = family(6);
  const Element e = ct.gamma.group->identity();
  int checked = 0;
  for (int tag : {0, 1, ct.att.new_tag}) {
    const VertexRef u{tag, e};
    for (const GVertex& v : b6.vertices()) {
      if (v.tag == tag && v.rep == e) continue;
      for (int k = 1; k <= 5; ++k) {
        const FinenessReport rep = fineness_report(family, u, {v.tag, v.rep}, k, radii);
        ++checked;
        if (rep.verdict != FineVerdict::stable)
          c.expect(false, "tree+cone GROWING at " + b6.label(*b6.find(v.tag, v.rep)) + " k=" + std::to_string(k));
      }
    }
  }
  const GGraphSpec z2 = coned_z2();
  const FinenessReport g = fineness_report([&](int r) { return build_ball(z2, r); }, {1, {0, 0}}, {1, {0, 1}}, 3,
                                           {4, 5, 6, 7, 8, 9, 10});
  c.expect(g.verdict == FineVerdict::growing, "coned Z^2 not GROWING");
  c.expect(std::adjacent_find(g.cardinalities.begin(), g.cardinalities.end(), std::greater_equal<>()) ==
               g.cardinalities.end(),
           "coned Z^2 cardinalities " + join(g.cardinalities));
  c.expect(g.witnesses.size() >= 3, "fewer than 3 witnesses");
  return c.done(std::to_string(checked) + " tree+cone triples STABLE; coned Z^2 GROWING " + join(g.cardinalities) +
                " with " + std::to_string(g.witnesses.size()) + " witnesses");
}

bool subset(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Outcome wz_chain_check() {
  Checker c;
  const ConedTree ct = coned_tree(9);
  const GGraphBall gamma = build_ball(ct.gamma, 9);
  const Element e = ct.gamma.group->identity();
  const int a = *gamma.find(1, e);
  int b = -1;
  for (int i = 0; i < gamma.size() && b < 0; ++i)
    if (gamma.vertices()[i].level == 2 && gamma.vertices()[i].tag == 0) b = i;
  const int n = static_cast<int>(ct.att.ends.size()) * ct.att.ell;
  const WzReport ok = wz_chain(gamma, a, b, n, ct.att);
  c.expect(ok.chain_holds, "chain violated: " + ok.violation);
  c.expect(ok.finite, "a set reached the ball boundary");
  c.expect(static_cast<int>(ok.levels.size()) == n, "level count");
  for (std::size_t i = 0; i < ok.levels.size(); ++i) {
    const auto& next_w = i + 1 < ok.levels.size() ? ok.levels[i + 1].w : ok.w0;
    c.expect(subset(ok.levels[i].w, ok.levels[i].z), "W_j not in Z_{j-1} at j=" + std::to_string(ok.levels[i].j));
    c.expect(subset(ok.levels[i].z, next_w), "Z_{j-1} not in W_{j-1} at j=" + std::to_string(ok.levels[i].j));
  }
  const WzReport bad = wz_chain(gamma, a, b, n, ct.att, true);
  c.expect(!bad.chain_holds, "corrupted fixture accepted");
  return c.done("n=" + std::to_string(n) + ", containments hold at all levels, corrupted fixture rejected (" +
                bad.violation + ")");
}

Outcome qi_bound() {
  Checker c;
  const GGraphBall gamma = build_ball(line(), 12);
  const Attachment ch = chords(gamma);
  const QiCertificate q = qi_certificate(gamma, build_ball(ch.delta, 12), ch.ell);
  c.expect(q.ok, "line chords: " + q.detail);
  c.expect(q.ell == 2, "line chords ell=" + std::to_string(q.ell));
  c.expect(q.pairs == 13 * 12 / 2, "inner pairs " + std::to_string(q.pairs));
  std::string fixtures = "chords(2)";
  const GGraphBall wide = build_ball(line(), 36);
  const Attachment ch3 = chords(wide, 3);
  const QiCertificate q3 = qi_certificate(wide, build_ball(ch3.delta, 12), ch3.ell);
  c.expect(q3.ok && ch3.ell == 3, "chords(3): " + q3.detail);
  fixtures += ", chords(3)";
  const ConedTree ct = coned_tree(8);
  const QiCertificate t = qi_certificate(build_ball(ct.gamma, 8), build_ball(ct.att.delta, 8), ct.att.ell);
  c.expect(t.ok, "coned tree: " + t.detail);
  fixtures += ", coned tree (ell " + std::to_string(ct.att.ell) + ")";
  return c.done("line + chords ell=2 over " + std::to_string(q.pairs) + " pairs; dist bound holds for " + fixtures);
}

Outcome small_cancellation() {
  Checker c;
  const auto g = c4c6();
  auto space = std::make_shared<const SyllableSpace>(g);
  const SylWord r = space->from_word(r_word(*g));
  for (int m : {1, 12}) {
    const SymmetrizedSet s = symmetrize(space, space->power(r, m));
    const PieceReport p = pieces(s);
    int best = 0;
    std::size_t shortest = s.members.front().size();
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      shortest = std::min(shortest, s.members[i].size());
      for (std::size_t j = i + 1; j < s.members.size(); ++j) best = std::max(best, prefix_oracle(s.members[i], s.members[j]));
    }
    c.expect(p.max_piece == best && p.min_length == static_cast<int>(shortest) &&
                 p.lambda_star == Rational(best, static_cast<long long>(shortest)),
             "piece report differs from oracle at m=" + std::to_string(m));
  }
  c.expect(check_cprime(space, r, 12, Rational(1, 12)).holds, "C'(1/12) fails for r^12");
  const SylWord ab = space->from_word(amalgam_word(*g, {{0, 1}, {1, 1}}));
  const CprimeVerdict v = check_cprime(space, ab, 12, Rational(1, 12));
  std::ostringstream ls;
  ls << v.lambda_star;
  c.expect(!v.holds, "check_cprime(ab, 12, 1/12) = true, expected false (lambda* = " + ls.str() +
                         " under element-distinct pieces)");
  return c.done("pieces match oracle; r^12 satisfies C'(1/12); (ab)^12 rejected");
}

Outcome constant_m() {
  Checker c;
  const auto g = c4c6();
  const ThinnessConstant f = compute_M(g, r_word(*g));
  c.expect(f.k == 1 && f.M == f.r_length && f.r_length == 6, "free product k=" + std::to_string(f.k));
  c.expect(std::all_of(f.edge_orders.begin(), f.edge_orders.end(), [](int o) { return o == 1; }),
           "free product has a nontrivial edge group");
  const auto sl = sl2z();
  const GroupWord ab = amalgam_word(*sl, {{0, 1}, {1, 1}});
  const ThinnessConstant s = compute_M(sl, ab);
  c.expect(s.k == 1 && tree_k(sl, ab) == 1, "central amalgam k=" + std::to_string(s.k));
  const S3Amalgam s3 = s3_amalgam();
  const ThinnessConstant t = compute_M(s3.gog, s3.r);
  const int oracle_k = tree_k(s3.gog, s3.r);
  c.expect(t.k == 2 && oracle_k == 2, "S3 amalgam k=" + std::to_string(t.k) + " oracle " + std::to_string(oracle_k));
  return c.done("free product k=1 M=6; C4*_{C2}C6 k=1; S3 amalgam k=2 (oracle agrees)");
}

Outcome m_thin() {
  Checker c;
  const auto g = c4c6();
  auto space = std::make_shared<const SyllableSpace>(g);
  GroupWord r12 = r_word(*g);
  for (int i = 1; i < 12; ++i) r12 = concat(r12, r_word(*g), *g);
  const PresentationComplex pc =
      presentation_complex_ball(g, {r12}, 2, make_dehn_oracle(symmetrize(space, space->from_word(r12))));
  const ThinReport thin = check_M_thin(pc.complex, 6);
  c.expect(thin.thin, "an interior edge borders " + std::to_string(thin.max_count) + " cells");
  c.expect(thin.interior_edges > 0, "no interior edges");
  const ClaimAudit a = claim_audit(pc, g, r_word(*g), 12);
  c.expect(a.orbit_supported && a.orbit_bound == 6 && a.edge_orbits <= a.orbit_bound, "orbit bound");
  c.expect(a.index_ok, "index bound");
  c.expect(a.all_ok(), "claim audit");
  return c.done(std::to_string(pc.complex.cells2.size()) + " cells, " + std::to_string(thin.interior_edges) +
                " interior edges, max " + std::to_string(thin.max_count) + " <= 6; audit ok");
}

SylWord random_normal_form(std::mt19937_64& rng, int len) {
  SylWord w;
  int f = static_cast<int>(rng() % 2);
  for (int i = 0; i < len; ++i, f ^= 1) w.push_back({f, 1 + static_cast<std::int64_t>(rng() % (f ? 5 : 3))});
  return w;
}

Outcome dehn() {
  Checker c;
  const auto g = c4c6();
  auto space = std::make_shared<const SyllableSpace>(g);
  const SylWord r12 = space->power(space->from_word(r_word(*g)), 12);
  const SymmetrizedSet s = symmetrize(space, r12);
  std::mt19937_64 rng(0xCA1);
  int kernel_ok = 0, free_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    SylWord w;
    const int factors = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < factors; ++j) {
      const SylWord conj = random_normal_form(rng, static_cast<int>(rng() % 8));
      const SylWord rel = rng() % 2 ? r12 : space->inverse(r12);
      w = space->multiply(w, space->multiply(space->multiply(conj, rel), space->inverse(conj)));
    }
    kernel_ok += dehn_reduce(w, s).in_kernel;
  }
  // H1 of the quotient is Z/4 x Z/6 (r^12 has exponent sums 24 and 72), so a
  // word with nonzero exponent sums is nontrivial there.
  for (int i = 0; i < 1000;) {
    const SylWord w = random_normal_form(rng, 1 + static_cast<int>(rng() % 40));
    std::int64_t ea = 0, eb = 0;
    for (const auto& x : w) (x.factor ? eb : ea) += x.value;
    if (ea % 4 == 0 && eb % 6 == 0) continue;
    ++i;
    free_ok += !dehn_reduce(w, s).in_kernel;
  }
  c.expect(kernel_ok == 1000, std::to_string(kernel_ok) + "/1000 kernel words reduced");
  c.expect(free_ok == 1000, std::to_string(free_ok) + "/1000 H1-nontrivial words kept");
  return c.done("1000/1000 conjugate products reduce to empty; 1000/1000 H1-certified words do not");
}

Outcome omega() {
  Checker c;
  const TrivialityReport c3 = bounded_trivial(pi1_presentation(omega_k(complex_from_graph(Graph::cycle(3)), 3)));
  c.expect(c3.verdict == Triviality::yes, "Omega_3(C3) not YES");
  const TrivialityReport c4 = bounded_trivial(pi1_presentation(omega_k(complex_from_graph(Graph::cycle(4)), 3)));
  c.expect(c4.verdict == Triviality::no && c4.h1.to_string() == "Z", "Omega_3(C4) gives H1 " + c4.h1.to_string());
  auto z2 = std::make_shared<const LatticeGroup>(2);
  const GGraphBall grid = build_ball(coset_graph_spec(z2, trivial_handle(z2), {{1, 0}, {0, 1}}, {}), 6);
  const TrivialityReport g = bounded_trivial(pi1_presentation(omega_k(complex_from_graph(grid.graph()), 4)), 10'000);
  c.expect(g.verdict == Triviality::yes, "Omega_4(Z^2 ball) not YES");
  c.expect(g.rewrites <= 10'000, "effort bound exceeded");
  return c.done("C3 YES; C4 NO with H1=Z; Z^2 ball (" + std::to_string(grid.size()) + " vertices) YES after " +
                std::to_string(g.rewrites) + " rewrites");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism(const std::string& cli, const fs::path& jobs, const fs::path& golden) {
  Checker c;
  if (cli.empty() || !fs::is_directory(golden)) return {false, "no CLI or golden directory given"};
  const fs::path work = fs::temp_directory_path() / ("relhyp_acceptance_" + std::to_string(::getpid()));
  int count = 0;
  std::vector<fs::path> cases;
  for (const auto& d : fs::directory_iterator(golden))
    if (d.is_directory()) cases.push_back(d.path());
  std::sort(cases.begin(), cases.end());
  for (const fs::path& dir : cases) {
    const std::string name = dir.filename().string();
    for (int run = 1; run <= 3; ++run) {
      const fs::path out = work / name / std::to_string(run);
      fs::create_directories(out);
      const std::string cmd = "cd \"" + out.string() + "\" && \"" + cli + "\" run \"" + (jobs / (name + ".json")).string() +
                              "\" --out-dir . > stdout.txt 2> /dev/null";
      const int status = std::system(cmd.c_str());
      std::ofstream(out / "exit_code.txt") << WEXITSTATUS(status) << "\n";
      std::set<std::string> produced, expected;
      for (const auto& f : fs::directory_iterator(out)) produced.insert(f.path().filename().string());
      for (const auto& f : fs::directory_iterator(dir)) expected.insert(f.path().filename().string());
      c.expect(produced == expected, name + " run " + std::to_string(run) + ": file set differs");
      for (const auto& f : expected)
        c.expect(slurp(out / f) == slurp(dir / f), name + " run " + std::to_string(run) + ": " + f + " differs");
    }
    ++count;
  }
  fs::remove_all(work);
  c.expect(count > 0, "no golden jobs");
  return c.done(std::to_string(count) + " golden jobs byte-identical across 3 reruns");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? fs::absolute(argv[1]).string() : "";
  const fs::path jobs = argc > 2 ? fs::absolute(argv[2]) : fs::path();
  const fs::path golden = argc > 3 ? fs::absolute(argv[3]) : fs::path();
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Bass-Serre biregularity", biregularity},
      {2, "normal-form oracle equivalence", normal_forms},
      {3, "fineness positive/negative", fineness},
      {4, "W/Z chain", wz_chain_check},
      {5, "QI bound", qi_bound},
      {6, "small cancellation", small_cancellation},
      {7, "constant M", constant_m},
      {8, "M-thinness", m_thin},
      {9, "Dehn algorithm", dehn},
      {10, "Omega_k", omega},
      {11, "determinism", [&] { return determinism(cli, jobs, golden); }},
  };
  const std::set<int> known_failures{6};
  int unexpected = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  " << cr.id << ". " << cr.name << ": " << o.detail;
    if (!o.pass && known_failures.count(cr.id)) line << " [known failure, unattainable as stated; see decisions ledger]";
    if (o.pass && known_failures.count(cr.id)) line << " [listed as a known failure but passed]";
    line.precision(2);
    line << std::fixed << " (" << secs << "s)";
    std::cout << line.str() << std::endl;
    if (!o.pass && !known_failures.count(cr.id)) ++unexpected;
  }
  std::cout << (unexpected ? "unexpected failures: " + std::to_string(unexpected) : std::string("no unexpected failures"))
            << std::endl;
  return unexpected ? 1 : 0;
}
