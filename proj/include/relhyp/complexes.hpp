#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "relhyp/g_graph.hpp"

namespace relhyp {

// 0-cells are skeleton vertices, 1-cells its edges, 2-cells closed vertex
// cycles (length >= 3) along existing edges.
struct TwoComplexBall {
  Graph skeleton;
  std::vector<std::vector<int>> cells2;
  std::vector<int> vertex_tag;
  std::vector<std::string> tag_names;
  std::vector<std::string> labels;
  std::vector<bool> interior;  // per 0-cell

  int num_vertices() const { return skeleton.size(); }
  bool edge_interior(int a, int b) const { return interior[a] && interior[b]; }
  bool cell_interior(int c) const;
  // Validates the cycle; returns the new index or the index of an existing
  // cell with the same boundary up to rotation and reversal.
  int add_cell(std::vector<int> cycle);
  std::optional<int> find_cell(const std::vector<int>& cycle) const;
  // Cells containing the edge {a, b}.
  std::vector<int> cells_at_edge(int a, int b) const;
  std::vector<int> cells_at_vertex(int v) const;
  long euler_characteristic() const;

 private:
  std::map<std::vector<int>, int> canon_;
  std::map<std::pair<int, int>, std::vector<int>> by_edge_;
};

// Least rotation of the cycle or of its reversal.
std::vector<int> canonical_cycle(const std::vector<int>& cycle);

TwoComplexBall complex_from_graph(const Graph& g, std::vector<bool> interior = {});
TwoComplexBall complex_from_ball(const GGraphBall& ball);

// Simple cycles of length 3..k, one per rotation/reversal class, canonical order.
std::vector<std::vector<int>> simple_cycles(const Graph& g, int k, std::size_t cap = 1'000'000);
TwoComplexBall omega_k(const TwoComplexBall& base, int k, std::size_t cap = 1'000'000);
TwoComplexBall omega_k(const GGraphBall& ball, int k, std::size_t cap = 1'000'000);

struct LinkGraph {
  int base = 0;
  std::vector<int> edge_ends;  // link vertex i is the 1-cell {base, edge_ends[i]}
  Graph graph;                 // one edge per corner; parallel corners counted in corners
  std::vector<std::pair<int, int>> corners;  // (link vertex, link vertex) per 2-cell corner
  bool partial = false;
  int degree(int i) const;
};

LinkGraph link(const TwoComplexBall& x, int v);

struct LinkCorrespondence {
  int link_components = 0;
  int puncture_components = 0;
  // link component -> puncture component
  std::vector<int> mapping;
  bool bijective = false;
  bool boundary_interference = false;
};

// orbit: 0-cells in the G-orbit of v (removed); empty means {v}.
LinkCorrespondence link_component_correspondence(const TwoComplexBall& x, int v,
                                                 std::vector<int> orbit = {});

// Generator i is the 1-cell generator_edges[i], oriented from lower to higher
// index; letters are +-(i+1).
struct Presentation {
  int num_generators = 0;
  std::vector<std::vector<int>> relators;
  std::vector<std::pair<int, int>> generator_edges;
};

Presentation pi1_presentation(const TwoComplexBall& x);

using BigInt = boost::multiprecision::cpp_int;

// Nonzero invariant factors d1 | d2 | ... plus the free rank.
struct Abelianization {
  std::vector<BigInt> torsion;
  int rank = 0;
  bool trivial() const { return rank == 0 && torsion.empty(); }
  std::string to_string() const;
};

Abelianization abelianization(const Presentation& p);
// Diagonal of the Smith normal form of an integer matrix (nonzero entries).
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m);

enum class Triviality { yes, no, unknown };
const char* to_string(Triviality t);

struct TrivialityReport {
  Triviality verdict = Triviality::unknown;
  Abelianization h1;
  long rewrites = 0;
  int remaining_generators = 0;
};

TrivialityReport bounded_trivial(const Presentation& p, long effort = 10'000);

struct KernelSample {
  int length = 0;
  int candidates = 0;
  int kernel_words = 0;
  int max_area = 0;
  bool exhaustive = false;
};

struct DehnFunctionTable {
  std::vector<KernelSample> rows;
  double slope = 0.0;  // least-squares slope of max area against length through 0
  std::uint64_t seed = 0;
};

struct WordBatch {
  std::vector<std::vector<int>> words;
  bool exhaustive = false;
};

// words(n, seed) lists candidate words of length n; area(w) is the area of a
// kernel word or nullopt outside the kernel.
DehnFunctionTable dehn_function_sample(
    const std::vector<int>& lengths, const std::function<WordBatch(int, std::uint64_t)>& words,
    const std::function<std::optional<int>(const std::vector<int>&)>& area,
    std::uint64_t seed = 0xCA1);

struct HyperbolicityEstimate {
  int twice_delta = 0;  // 2 delta, so half-integers stay exact
  long tuples = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
  std::vector<int> witness;
  double delta() const { return twice_delta / 2.0; }
};

HyperbolicityEstimate hyperbolicity_estimate(const Graph& g, std::size_t exhaustive_limit = 80,
                                             long samples = 200'000, std::uint64_t seed = 0xCA1);

}  // namespace relhyp
