#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/finite_group.hpp"

namespace relhyp {

// A graph in the sense of Serre: every geometric edge appears as a pair of
// mutually inverse oriented edges e, bar(e) with o(e) = t(bar(e)).
struct SerreGraph {
  int num_vertices = 0;
  std::vector<int> origin;
  std::vector<int> terminus;
  std::vector<int> bar;

  int num_edges() const { return static_cast<int>(origin.size()); }
  // Adds the pair (e, bar e) from u to v and returns e; bar e is e + 1.
  int add_edge_pair(int u, int v);
};

enum class GogKind { amalgam, hnn, general };

const char* to_string(GogKind kind);

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Finite graph of finite groups. inj(e) embeds the edge group of e into the
// vertex group at t(e); edge_group(e) and edge_group(bar e) are one object.
class GraphOfGroups {
 public:
  GraphOfGroups(SerreGraph graph, std::vector<GroupPtr> vertex_groups,
                std::vector<GroupPtr> edge_groups,
                std::vector<std::vector<Elem>> injections);

  const SerreGraph& graph() const noexcept { return graph_; }
  int num_vertices() const noexcept { return graph_.num_vertices; }
  int num_edges() const noexcept { return graph_.num_edges(); }
  int origin(int e) const { return graph_.origin[e]; }
  int terminus(int e) const { return graph_.terminus[e]; }
  int bar(int e) const { return graph_.bar[e]; }
  const FiniteGroup& vertex_group(int v) const { return *vgroups_[v]; }
  const FiniteGroup& edge_group(int e) const { return *egroups_[e]; }
  const GroupPtr& vertex_group_ptr(int v) const { return vgroups_[v]; }
  const GroupPtr& edge_group_ptr(int e) const { return egroups_[e]; }
  const GroupHom& inj(int e) const { return inj_[e]; }
  // Image of inj(e) inside the vertex group at t(e).
  const Subgroup& image(int e) const { return images_[e]; }

  GogKind kind() const noexcept { return kind_; }
  bool all_edge_groups_trivial() const;
  // Invariant violations found at construction; empty when valid.
  const std::vector<std::string>& violations() const noexcept { return violations_; }
  bool valid() const noexcept { return violations_.empty(); }
  void require_valid() const;

  // Maximal tree rooted at vertex 0 (BFS, least edge index first).
  bool is_tree_edge(int e) const { return tree_edge_[e]; }
  // Edge path from vertex 0 to v inside the maximal tree.
  const std::vector<int>& tree_path(int v) const { return tree_path_[v]; }

 private:
  SerreGraph graph_;
  std::vector<GroupPtr> vgroups_;
  std::vector<GroupPtr> egroups_;
  std::vector<GroupHom> inj_;
  std::vector<Subgroup> images_;
  std::vector<std::string> violations_;
  GogKind kind_ = GogKind::general;
  std::vector<char> tree_edge_;
  std::vector<std::vector<int>> tree_path_;
};

// Element of the fundamental groupoid: g0 e1 g1 ... en gn with g_i in the
// vertex group at the i-th vertex of the edge path. Loop words (ending at the
// basepoint) are elements of pi_1. elems.size() == edges.size() + 1 always; the
// identity is the word with no edges and elems == {identity}.
struct GroupWord {
  int base = 0;
  std::vector<Elem> elems{0};
  std::vector<int> edges;

  int num_edges() const { return static_cast<int>(edges.size()); }
  auto operator<=>(const GroupWord&) const = default;
};

GroupWord identity_word(const GraphOfGroups& gog, int base);
GroupWord element_word(const GraphOfGroups& gog, int v, Elem g);
int end_vertex(const GroupWord& w, const GraphOfGroups& gog);
bool is_loop(const GroupWord& w, const GraphOfGroups& gog);
// Checks path structure and element ranges; throws invalid-word.
void check_word(const GroupWord& w, const GraphOfGroups& gog);
// Concatenation; end of u must equal the base of w.
GroupWord concat(const GroupWord& u, const GroupWord& w, const GraphOfGroups& gog);
GroupWord inverse(const GroupWord& w, const GraphOfGroups& gog);
// Word of the tree path from vertex 0 to v with identity syllables.
GroupWord tree_path_word(const GraphOfGroups& gog, int v);
std::string to_string(const GroupWord& w, const GraphOfGroups& gog);

// Right-coset representatives of each edge image inj(e)(G_e) <= G_t(e), plus
// left-coset representatives used for tree neighbourhoods. The trivial coset
// is always represented by the identity.
class Transversals {
 public:
  struct Split {
    Elem edge_elem;  // c in G_e
    Elem rep;        // g = inj(e)(c) * rep
  };

  Transversals(const GraphOfGroups& gog, unsigned seed);

  Split right_split(int e, Elem g) const { return right_[e][g]; }
  // Right-coset representatives of image(e) (one per coset, sorted by coset).
  const std::vector<Elem>& right_reps(int e) const { return right_reps_[e]; }
  // Left-coset representatives of image(e) in G_t(e), least element per coset.
  const std::vector<Elem>& left_reps(int e) const { return left_reps_[e]; }
  unsigned seed() const noexcept { return seed_; }

 private:
  unsigned seed_;
  std::vector<std::vector<Split>> right_;
  std::vector<std::vector<Elem>> right_reps_;
  std::vector<std::vector<Elem>> left_reps_;
};

Transversals fix_transversals(const GraphOfGroups& gog, unsigned seed = 0);

struct NormalForm {
  GroupWord word;
  GogKind kind = GogKind::general;

  bool is_identity() const { return word.edges.empty() && word.elems[0] == 0; }
  friend bool operator==(const NormalForm& a, const NormalForm& b) {
    return a.word == b.word;
  }
};

enum class Sweep { left_to_right, right_to_left };

// Britton-style pinching followed by pushing edge-group elements leftwards so
// that every syllable after the first is a right-coset representative. The
// left-to-right sweep is canonical; the other exists to test confluence.
NormalForm reduce(const GroupWord& w, const GraphOfGroups& gog,
                  const Transversals& t, Sweep sweep = Sweep::left_to_right);
bool words_equal(const GroupWord& u, const GroupWord& w, const GraphOfGroups& gog,
                 const Transversals& t);
// Number of non-edge syllables of the normal form: for amalgams the count of
// nontrivial coset representatives x_1..x_n after splitting off x_0 in C; for
// other kinds the number of edge letters.
int syllable_length(const NormalForm& nf, const GraphOfGroups& gog,
                    const Transversals& t);

struct CyclicReduction {
  GroupWord core;        // cyclically reduced loop, possibly at another vertex
  GroupWord conjugator;  // path word from the original base to core.base
};

// w = conjugator * core * conjugator^-1 with no pinch across the seam of core.
CyclicReduction cyclically_reduce(const GroupWord& w, const GraphOfGroups& gog,
                                  const Transversals& t);
bool is_cyclically_reduced(const GroupWord& reduced, const GraphOfGroups& gog);

// The fixture used throughout: C4 *_{C2} C6 with a = 1 in C4 (vertex 0),
// b = 1 in C6 (vertex 1), and a^2 = b^3 generating the edge group.
GraphOfGroups make_amalgam(const FiniteGroup& a, const FiniteGroup& b,
                           const FiniteGroup& c, std::vector<Elem> into_a,
                           std::vector<Elem> into_b);
GraphOfGroups make_sl2z_amalgam();
GraphOfGroups make_free_product(const FiniteGroup& a, const FiniteGroup& b);
// HNN extension of a over c: conjugation by the stable letter t sends
// into_a(c) to into_b(c), i.e. t^-1 into_a(c) t = into_b(c).
GraphOfGroups make_hnn(const FiniteGroup& a, const FiniteGroup& c,
                       std::vector<Elem> into_a, std::vector<Elem> into_b);

// Loop word at vertex 0 of an amalgam from alternating factor syllables:
// each pair is (vertex 0 or 1, element).
GroupWord amalgam_word(const GraphOfGroups& gog,
                       const std::vector<std::pair<int, Elem>>& syllables);

}  // namespace relhyp
