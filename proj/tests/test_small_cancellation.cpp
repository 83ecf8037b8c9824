#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "doctest.h"
#include "relhyp/bass_serre.hpp"
#include "relhyp/error.hpp"
#include "relhyp/small_cancellation.hpp"
#include "fixtures.hpp"

using namespace relhyp;
using namespace fixture;

namespace {

using Perm = std::array<int, 3>;

Perm compose(const Perm& p, const Perm& q) { return {q[p[0]], q[p[1]], q[p[2]]}; }

Perm perm_power(const Perm& p, long k) {
  Perm r{0, 1, 2};
  for (long i = 0; i < k; ++i) r = compose(r, p);
  return r;
}

// Word oracle through a homomorphism onto S3 that is injective on the quotient.
WordOracle s3_oracle(std::shared_ptr<const SyllableSpace> space, Perm x, Perm y) {
  return [=](const SylWord& w) -> std::optional<bool> {
    Perm p{0, 1, 2};
    for (const auto& s : space->normalize(w)) p = compose(p, perm_power(s.factor == 0 ? x : y, s.value));
    return p == Perm{0, 1, 2};
  };
}

// Free-product syllable calculus by hand: rotations and inverses of an
// alternating word in C4 * C6.
std::set<SylWord> closure_oracle(const SylWord& r) {
  const int order[2] = {4, 6};
  SylWord inv(r.rbegin(), r.rend());
  for (auto& s : inv) s.value = (order[s.factor] - s.value) % order[s.factor];
  std::set<SylWord> out;
  for (const SylWord& w : {r, inv}) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      SylWord rot(w.begin() + static_cast<long>(i), w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(i));
      out.insert(rot);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("symmetrized sets") {
  const auto g = c4c6();
  auto space = std::make_shared<const SyllableSpace>(g);
  const SylWord ab = space->from_word(amalgam_word(*g, {{0, 1}, {1, 1}}));
  const SymmetrizedSet s = symmetrize(space, ab);
  CHECK(s.members.size() == 4);
  const auto oracle = closure_oracle(ab);
  CHECK(std::set<SylWord>(s.members.begin(), s.members.end()) == oracle);

  const SylWord a2 = space->from_word(amalgam_word(*g, {{0, 2}}));
  CHECK(symmetrize(space, a2).members.size() == 1);

  const SylWord r = space->from_word(r_word(*g));
  const SymmetrizedSet sr = symmetrize(space, r);
  CHECK(std::set<SylWord>(sr.members.begin(), sr.members.end()) == closure_oracle(r));
  CHECK(symmetrize(space, space->inverse(r)).members == sr.members);
  CHECK(symmetrize(space, sr.members).members == sr.members);
  CHECK_THROWS_AS(symmetrize(space, SylWord{}), Error);
  for (const auto& m : sr.members) CHECK(space->cyclically_reduced(m));
}

TEST_CASE("pieces match exhaustive prefix enumeration") {
  const auto g = c4c6();
  auto space = std::make_shared<const SyllableSpace>(g);
  const SylWord r = space->from_word(r_word(*g));
  const SylWord ab = space->from_word(amalgam_word(*g, {{0, 1}, {1, 1}}));
  for (const SylWord& base : {r, space->power(r, 2), space->power(r, 12), ab, space->power(ab, 3)}) {
    const SymmetrizedSet s = symmetrize(space, base);
    const PieceReport p = pieces(s);
    int best = 0;
    std::size_t shortest = s.members.front().size();
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      shortest = std::min(shortest, s.members[i].size());
      for (std::size_t j = i + 1; j < s.members.size(); ++j)
        best = std::max(best, prefix_oracle(s.members[i], s.members[j]));
    }
    CHECK(p.max_piece == best);
    CHECK(p.min_length == static_cast<int>(shortest));
    CHECK(p.lambda_star == Rational(best, static_cast<long long>(shortest)));
    CHECK(p.lambda_star < Rational(1));
    for (const auto& m : s.members) {
      const PieceReport again = pieces(symmetrize(space, m));
      CHECK(again.max_piece == p.max_piece);
      CHECK(again.min_length == p.min_length);
    }
  }
  const PieceReport pr = pieces(symmetrize(space, r));
  CHECK(pr.max_piece == 3);
  CHECK(pr.lambda_star == Rational(1, 2));
  CHECK_FALSE(pr.proper_power);

  const PieceReport periodic = pieces(symmetrize(space, space->power(ab, 3)));
  CHECK(periodic.proper_power);
  CHECK(periodic.period == 2);
  CHECK(periodic.periodic_overlap == 4);
}

TEST_CASE("C'(lambda) verdicts") {
  const auto g = c4c6();
  auto space = std::make_shared<const SyllableSpace>(g);
  const SylWord r = space->from_word(r_word(*g));
  const CprimeVerdict v = check_cprime(space, r, 12, Rational(1, 12));
  CHECK(v.holds);
  CHECK(v.length == 72);
  CHECK(v.max_piece == 3);
  CHECK_FALSE(check_cprime(space, r, 1, Rational(1, 6)).holds);
  CHECK(check_cprime(space, r, 1, Rational(1)).holds);
  CHECK(thinness_condition(Rational(1, 73), 6));
  CHECK_FALSE(thinness_condition(Rational(1, 72), 6));
}

TEST_CASE("constant M") {
  const auto g = c4c6();
  const ThinnessConstant f = compute_M(g, r_word(*g));
  CHECK(f.k == 1);
  CHECK(f.r_length == 6);
  CHECK(f.M == 6);
  for (int o : f.edge_orders) CHECK(o == 1);

  const auto sl = std::make_shared<const GraphOfGroups>(make_sl2z_amalgam());
  const GroupWord ab = amalgam_word(*sl, {{0, 1}, {1, 1}});
  const ThinnessConstant c = compute_M(sl, ab);
  CHECK(c.k == 1);
  CHECK(c.M == 2);
  CHECK(c.center_vertex == 0);
  CHECK(tree_k(sl, ab) == 1);

  const S3Amalgam s3 = s3_amalgam();
  const ThinnessConstant t = compute_M(s3.gog, s3.r);
  CHECK(t.k == 2);
  CHECK(t.M == 2 * t.r_length);
  CHECK(t.center_vertex == 0);
  CHECK(tree_k(s3.gog, s3.r) == 2);
  CHECK(std::count(t.edge_indices.begin(), t.edge_indices.end(), 2) > 0);
  CHECK(t.M == t.k * t.r_length);
}

TEST_CASE("M is invariant under cyclic shifts of r") {
  const auto g = c4c6();
  std::vector<std::pair<int, Elem>> syl{{0, 1}, {1, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}};
  const S3Amalgam s3 = s3_amalgam();
  for (std::size_t i = 0; i < syl.size(); ++i) {
    std::rotate(syl.begin(), syl.begin() + 1, syl.end());
    CHECK(compute_M(g, amalgam_word(*g, syl)).M == 6);
  }
  const GroupWord shifted = concat(concat(inverse(amalgam_word(*s3.gog, {{0, 1}}), *s3.gog), s3.r, *s3.gog),
                                   amalgam_word(*s3.gog, {{0, 1}}), *s3.gog);
  CHECK(compute_M(s3.gog, shifted).M == compute_M(s3.gog, s3.r).M);
}

TEST_CASE("Dehn's algorithm") {
  const auto g = c4c6();
  auto space = std::make_shared<const SyllableSpace>(g);
  const SylWord r = space->from_word(r_word(*g));
  const SylWord r12 = space->power(r, 12);
  const SymmetrizedSet s = symmetrize(space, r12);

  const DehnResult d = dehn_reduce(r12, s);
  CHECK(d.in_kernel);
  CHECK(d.word.empty());
  CHECK(d.area >= 1);
  const SylWord a{{0, 1}};
  const DehnResult da = dehn_reduce(a, s);
  CHECK_FALSE(da.in_kernel);
  CHECK(da.word == a);
  CHECK(da.area == 0);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    SylWord c;
    for (int j = 0; j < 1 + static_cast<int>(rng() % 8); ++j) c.push_back({j % 2, 1 + static_cast<long>(rng() % (j % 2 ? 5 : 3))});
    const SylWord w = space->multiply(space->multiply(space->multiply(c, r12), space->inverse(c)), space->inverse(r12));
    const DehnResult k = dehn_reduce(w, s);
    CHECK(k.in_kernel);
    CHECK(space->equal(replay_witness(k, s), w));
    CHECK(static_cast<int>(k.trace.size()) == k.area);
  }
  CHECK_THROWS_AS(dehn_reduce(a, symmetrize(space, r)), Error);
  auto oracle = make_dehn_oracle(s);
  CHECK(oracle(r12) == true);
  CHECK(oracle(a) == false);

  const auto sl = std::make_shared<const GraphOfGroups>(make_sl2z_amalgam());
  auto amalgam_space = std::make_shared<const SyllableSpace>(sl);
  const SylWord ab = amalgam_space->from_word(amalgam_word(*sl, {{0, 1}, {1, 1}}));
  CHECK_THROWS_AS(make_dehn_oracle(symmetrize(amalgam_space, amalgam_space->power(ab, 12))), Error);
}

TEST_CASE("presentation complexes") {
  const auto g = c4c6();
  auto trivial = [](const SylWord& w) -> std::optional<bool> { return w.empty(); };
  const PresentationComplex none = presentation_complex_ball(g, {}, 3, trivial);
  CHECK(none.complex.cells2.empty());
  CHECK(check_M_thin(none.complex, 0).thin);
  CHECK(check_M_thin(none.complex, 0).max_count == 0);

  const auto d = std::make_shared<const GraphOfGroups>(make_free_product(make_cyclic(2), make_cyclic(2)));
  auto dspace = std::make_shared<const SyllableSpace>(d);
  const GroupWord st = amalgam_word(*d, {{0, 1}, {1, 1}});
  const GroupWord st3 = concat(concat(st, st, *d), st, *d);
  const PresentationComplex hex =
      presentation_complex_ball(d, {st3}, 4, s3_oracle(dspace, Perm{1, 0, 2}, Perm{0, 2, 1}));
  CHECK(hex.complex.num_vertices() == 6);
  CHECK(hex.complex.skeleton.num_edges() == 6);
  CHECK(hex.complex.cells2.size() == 1);
  CHECK(hex.complex.euler_characteristic() == 1);

  auto space = std::make_shared<const SyllableSpace>(g);
  GroupWord r12 = r_word(*g);
  for (int i = 1; i < 12; ++i) r12 = concat(r12, r_word(*g), *g);
  const auto s = symmetrize(space, space->from_word(r12));
  const PresentationComplex pc = presentation_complex_ball(g, {r12}, 2, make_dehn_oracle(s));
  CHECK(pc.complex.cells2.size() == 12);
  std::set<std::vector<int>> boundaries;
  for (const auto& c : pc.complex.cells2) {
    CHECK(c.size() == 72);
    CHECK(boundaries.insert(canonical_cycle(c)).second);
  }
  const ThinReport thin = check_M_thin(pc.complex, 6);
  CHECK(thin.thin);
  CHECK(thin.max_count == 6);
  CHECK(thin.interior_edges > 0);

  TwoComplexBall dup = pc.complex;
  dup.cells2.push_back(dup.cells2.front());
  const ThinReport bad = check_M_thin(dup, 6);
  CHECK_FALSE(bad.thin);
  CHECK(bad.max_count == 7);

  const ClaimAudit audit = claim_audit(pc, g, r_word(*g), 12);
  CHECK(audit.orbit_supported);
  CHECK(audit.edge_orbits == 6);
  CHECK(audit.orbit_bound == 6);
  CHECK(audit.injection_ok);
  CHECK(audit.index_ok);
  CHECK(audit.all_ok());
}

TEST_CASE("claim audit over an amalgam") {
  // SL2(Z) / <<(ab)^2>> is S3 with a -> (0 1), b -> (0 1 2).
  const auto sl = std::make_shared<const GraphOfGroups>(make_sl2z_amalgam());
  auto space = std::make_shared<const SyllableSpace>(sl);
  const GroupWord ab = amalgam_word(*sl, {{0, 1}, {1, 1}});
  const PresentationComplex pc =
      presentation_complex_ball(sl, {concat(ab, ab, *sl)}, 4, s3_oracle(space, Perm{1, 0, 2}, Perm{1, 2, 0}));
  CHECK_FALSE(pc.complex.cells2.empty());
  const ClaimAudit a = claim_audit(pc, sl, ab, 2);
  CHECK(a.max_index == 1);
  CHECK(a.k == 1);
  CHECK(a.index_ok);
  CHECK_FALSE(a.notes.empty());
}
