#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relhyp/g_graph.hpp"

namespace relhyp {

// nullopt means no path inside the ball (infinite as far as the ball knows).
using Angle = std::optional<int>;

Angle angle(const Graph& g, int v, int x, int y);

struct AngleEntry {
  int x;
  int y;
  Angle value;
};
std::vector<AngleEntry> angle_table(const Graph& g, int v);

struct EscapingSet {
  int u = 0;
  int v = 0;
  int k = 0;
  std::vector<int> members;                 // sorted neighbours of u
  std::vector<std::vector<int>> witnesses;  // path u, member, ..., v per member
  bool partial = false;
};

// complete[i] says that every neighbour of vertex i is present in g; an
// empty vector means all vertices are complete.
EscapingSet escaping_vectors(const Graph& g, const std::vector<bool>& complete, int u, int v, int k);

struct RecursionCheck {
  bool holds = true;
  bool partial = false;
  std::optional<int> counterexample;
  std::vector<int> lhs;
  std::vector<int> rhs;
};

// Checks ->uv(k+1) = U{ ->uw(k) : w in T_v, w != u } together with {v} when
// v is adjacent to u.
RecursionCheck recursion_check(const Graph& g, const std::vector<bool>& complete, int u, int v, int k);

struct VertexRef {
  int tag = 0;
  Element rep;
};

enum class FineVerdict { stable, growing };
const char* to_string(FineVerdict v);

struct FinenessReport {
  std::vector<int> radii;
  std::vector<int> cardinalities;
  std::vector<bool> partial;
  FineVerdict verdict = FineVerdict::stable;
  std::vector<std::vector<std::string>> witnesses;  // vertex labels
};

FinenessReport fineness_report(const std::function<GGraphBall(int)>& family, const VertexRef& u,
                               const VertexRef& v, int k, const std::vector<int>& radii);

// {u, v} (cone == false) or {u, H} (cone == true).
struct AttachSpec {
  bool cone = false;
  VertexRef u;
  VertexRef v;
  SubgroupHandle h;
  std::string name = "attached";
};

struct Attachment {
  GGraphSpec delta;
  AttachSpec spec;
  int new_orbit = -1;
  int new_tag = -1;
  // Neighbours of the base vertex H (cone) or the pair u, v.
  std::vector<VertexRef> ends;
  // alpha[i][j]: chosen geodesic in Gamma from ends[i] to ends[j].
  std::vector<std::vector<std::vector<VertexRef>>> alpha;
  int ell = 0;
  bool outside_hypotheses = false;
};

// gamma_ball must contain the ends and the geodesics between them.
Attachment attach_edge_orbit(const GGraphBall& gamma_ball, const AttachSpec& spec);

// Path delta (vertex indices of delta_ball) to a path in gamma_ball.
std::vector<int> alpha_replacement(const std::vector<int>& delta, const GGraphBall& delta_ball,
                                   const Attachment& att, const GGraphBall& gamma_ball);

struct QiCertificate {
  int ell = 1;
  int pairs = 0;
  bool ok = true;
  std::optional<std::pair<int, int>> counterexample;  // gamma indices
  std::string detail;
};

// Gamma vertices within half the radius of the center, compared in both
// graphs. With ell_alpha > 0 also checks d_Gamma <= ell_alpha d_Delta.
QiCertificate qi_certificate(const GGraphBall& gamma, const GGraphBall& delta, int ell_alpha = 0);

struct WzLevel {
  int j = 0;
  std::vector<int> w;  // W_j
  std::vector<int> z;  // Z_{j-1}
};

struct WzReport {
  int n = 0;
  std::vector<WzLevel> levels;  // j = n, n-1, ..., 1
  std::vector<int> w0;
  bool chain_holds = true;
  bool finite = true;  // no set touched the edge of the ball
  std::string violation;
};

WzReport wz_chain(const GGraphBall& gamma, int a, int b, int n, const Attachment& att,
                  bool corrupt_z = false);

}  // namespace relhyp
