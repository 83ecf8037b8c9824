#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/concrete_group.hpp"
#include "relhyp/g_graph.hpp"
#include "relhyp/graph_of_groups.hpp"
#include "relhyp/tokens.hpp"

namespace relhyp {

// Vertex set G/U plus G/H_i; edges {gU, gsU} and {gU, gH_i}.
GGraphSpec coset_graph_spec(ConcretePtr group, SubgroupHandle u, std::vector<Element> s,
                            std::vector<SubgroupHandle> h);
GGraphBall coset_graph_ball(ConcretePtr group, SubgroupHandle u, std::vector<Element> s,
                            std::vector<SubgroupHandle> h, int radius, std::size_t cap = 1'000'000);

// Decides triviality in pi1 / <<relators>>; nullopt means unknown.
using WordOracle = std::function<std::optional<bool>(const SylWord&)>;

// Permutation image of pi1 / <<relators>>: one right action per factor.
struct PermQuotient {
  int degree = 0;
  // finite factor f: perms[f][g] is the permutation of element g;
  // infinite factor: perms[f] = {generator, inverse}.
  std::vector<std::vector<std::vector<int>>> perms;

  std::vector<int> image(const SylWord& w, const SyllableSpace& space) const;
};

// Random search (seeded) for permutation quotients in which every relator acts
// trivially. Free-product mode only; returns fewer than count when unlucky.
std::vector<PermQuotient> find_perm_quotients(const SyllableSpace& space,
                                              const std::vector<SylWord>& relators, int count,
                                              unsigned seed, int max_degree = 16,
                                              int attempts = 20000);

// pi1 / <<relators>> with elements stored as canonical syllable words of pi1.
class QuotientGroup : public ConcreteGroup {
 public:
  QuotientGroup(std::shared_ptr<const SyllableSpace> space, std::vector<SylWord> relators,
                WordOracle wp, std::vector<PermQuotient> quotients = {});
  std::string name() const override { return "pi1/N"; }
  Element identity() const override { return {}; }
  Element mul(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  std::vector<Element> generators() const override;
  std::string format(const Element& a) const override;
  bool equal(const Element& a, const Element& b) const override;
  std::optional<Element> fingerprint(const Element& a) const override;
  std::optional<Element> lift_key(const Element& a) const override { return a; }

  static Element encode(const SylWord& w);
  static SylWord decode(const Element& e);
  const SyllableSpace& space() const { return *space_; }
  std::shared_ptr<const SyllableSpace> space_ptr() const { return space_; }
  const std::vector<SylWord>& relators() const { return relators_; }
  const std::vector<PermQuotient>& quotients() const { return quotients_; }
  const WordOracle& oracle() const { return wp_; }

 private:
  std::shared_ptr<const SyllableSpace> space_;
  std::vector<SylWord> relators_;
  WordOracle wp_;
  std::vector<PermQuotient> quotients_;
};

// Bass-Serre tree as a G-graph over pi1 (tags = vertices of the graph of
// groups, stabilizers q_v G_v q_v^-1).
GGraphSpec tree_spec(std::shared_ptr<const GraphOfGroups> gog, unsigned seed = 0);
// Same orbit data over the quotient group.
GGraphSpec quotient_tree_spec(std::shared_ptr<const QuotientGroup> q);

// Ball of T / ker(phi). With no relators this is the tree itself over pi1;
// otherwise wp must decide the word problem of the quotient.
GGraphBall quotient_tree_ball(std::shared_ptr<const GraphOfGroups> gog,
                              const std::vector<GroupWord>& relators, int radius,
                              const WordOracle& wp, std::size_t cap = 1'000'000,
                              unsigned seed = 0);

struct CaCondition {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CaReport {
  std::vector<CaCondition> conditions;
  // Per tag: stabilizer order or 0 for infinite.
  std::vector<int> stabilizer_orders;
  // Per tag: degree of the first vertex of that tag at each supplied radius.
  std::vector<std::vector<int>> degree_growth;
  bool all_pass() const;
};

// balls must share one spec and be listed by increasing radius; the degree
// dichotomy needs at least three of them and is otherwise reported as skipped.
CaReport check_ca_conditions(const std::vector<const GGraphBall*>& balls);

struct QiFit {
  int ell = 1;
  int pairs = 0;
  int inner_radius = 0;
};

// Distortion of the identity on the common tag-0 vertices of two balls of
// the same group, over pairs within half the smaller radius of the center.
QiFit empirical_qi(const GGraphBall& a, const GGraphBall& b);

}  // namespace relhyp
