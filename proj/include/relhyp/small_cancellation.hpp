#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "relhyp/bass_serre.hpp"
#include "relhyp/cayley_abels.hpp"
#include "relhyp/complexes.hpp"
#include "relhyp/g_graph.hpp"
#include "relhyp/tokens.hpp"

namespace relhyp {

using Rational = boost::rational<long long>;

struct SymmetrizedSet {
  std::shared_ptr<const SyllableSpace> space;
  std::vector<SylWord> base;     // cyclic cores of the input relators
  std::vector<SylWord> members;  // canonical words, sorted
};

SymmetrizedSet symmetrize(std::shared_ptr<const SyllableSpace> space, const std::vector<SylWord>& relators);
SymmetrizedSet symmetrize(std::shared_ptr<const SyllableSpace> space, const SylWord& r);

struct PiecePair {
  int i = 0;
  int j = 0;
  int length = 0;
};

struct PieceReport {
  std::vector<PiecePair> pairs;  // i < j, distinct members
  int max_piece = 0;
  std::optional<PiecePair> argmax;
  int min_length = 0;
  Rational lambda_star{0};
  // Periodic-overlap diagnostic for the first base relator.
  bool proper_power = false;
  int period = 0;
  int periodic_overlap = 0;  // overlap of the core with its shift by the period
};

// Longest common prefix of two members in syllables, where prefixes P1, P2
// agree when P1^-1 P2 lies in the edge group.
int common_prefix(const SyllableSpace& space, const SylWord& a, const SylWord& b);
PieceReport pieces(const SymmetrizedSet& s);

struct CprimeVerdict {
  bool holds = false;
  int max_piece = 0;
  int length = 0;  // syllable length of r^m
  Rational lambda{0};
  Rational lambda_star{0};
  PieceReport report;
};

CprimeVerdict check_cprime(std::shared_ptr<const SyllableSpace> space, const SylWord& r, int m, Rational lambda);

struct ThinnessConstant {
  int k = 1;
  int r_length = 0;
  int M = 0;
  int center_vertex = 0;  // graph-of-groups vertex the core is based at
  std::vector<std::string> gamma;  // path words of the 1-cells from y to r^2 y
  std::vector<int> edge_indices;   // [G_t : G_gamma] per 1-cell of gamma
  std::vector<int> edge_orders;    // |G_t|
  int gamma_order = 0;             // |G_gamma|
  GroupWord core;
};

ThinnessConstant compute_M(std::shared_ptr<const GraphOfGroups> gog, const GroupWord& r, unsigned seed = 0);

// 12 lambda M < 1.
bool thinness_condition(Rational lambda, int M);

struct DehnStep {
  SylWord before;
  SylWord after;
  int member = 0;
  std::size_t position = 0;
  int matched = 0;
  SylWord conjugator;  // before = conjugator member conjugator^-1 after
};

struct DehnResult {
  SylWord word;
  int area = 0;
  bool in_kernel = false;
  std::vector<DehnStep> trace;
};

// Free-product mode and C'(1/6) only; throws unsupported otherwise.
DehnResult dehn_reduce(const SylWord& w, const SymmetrizedSet& s);
// prod (c_i m_i c_i^-1) times the final word; equals the input of the trace.
SylWord replay_witness(const DehnResult& r, const SymmetrizedSet& s);
// Throws unsupported when dehn_reduce would.
WordOracle make_dehn_oracle(const SymmetrizedSet& s);

struct PresentationComplex {
  GGraphBall ball;
  TwoComplexBall complex;
  int radius = 0;
  std::shared_ptr<const QuotientGroup> group;
  std::vector<std::vector<std::pair<int, Element>>> loops;  // per relator: (tag, element) cycle
  std::vector<int> cell_relator;
  std::vector<Element> cell_translate;
};

// The 1-skeleton is the quotient tree ball; every 2-cell through an interior
// edge is attached, registering its vertices beyond the radius when needed.
PresentationComplex presentation_complex_ball(std::shared_ptr<const GraphOfGroups> gog,
                                              const std::vector<GroupWord>& relators, int radius,
                                              const WordOracle& wp, unsigned seed = 0,
                                              std::size_t cap = 1'000'000);

struct ThinReport {
  bool thin = true;
  int max_count = 0;
  std::optional<std::pair<int, int>> argmax;
  int interior_edges = 0;
  int boundary_edges = 0;  // excluded
  std::vector<int> histogram;  // histogram[c] = interior edges in c cells
};

ThinReport check_M_thin(const TwoComplexBall& x, int M);

struct ClaimAudit {
  bool orbit_supported = false;
  int boundary_edges = 0;
  int edge_orbits = 0;   // orbits of edges of the sample cell under its stabilizer
  int orbit_bound = 0;   // |r|
  bool orbit_ok = false;
  bool injection_supported = false;
  int sample_cells = 0;  // cells through the sample edge
  bool injection_ok = false;
  int max_index = 0;
  int k = 0;
  bool index_ok = false;
  std::vector<std::string> notes;
  bool all_ok() const;
};

ClaimAudit claim_audit(const PresentationComplex& x, std::shared_ptr<const GraphOfGroups> gog, const GroupWord& r,
                       int m, unsigned seed = 0);

}  // namespace relhyp
