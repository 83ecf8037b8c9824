#pragma once

#include <string>

#include "json.hpp"
#include "relhyp/bass_serre.hpp"
#include "relhyp/complexes.hpp"
#include "relhyp/finite_group.hpp"
#include "relhyp/g_graph.hpp"
#include "relhyp/graph_of_groups.hpp"
#include "relhyp/tokens.hpp"

namespace relhyp {

// Insertion-ordered so that reports serialize identically run to run.
using Json = nlohmann::ordered_json;

// {"order": n, "table": [[...]], "names": [...]}, or one of the shorthands
// {"cyclic": n}, {"symmetric": n}, {"dihedral": n}.
FiniteGroup group_from_json(const Json& j, const std::string& path);
Json group_to_json(const FiniteGroup& g);

// {"groups": {name: group}, "vertices": [ref...],
//  "edges": [{"group": ref, "from": u, "to": v, "inj": [...], "inj_bar": [...]}]}
// where a ref is a group name or an inline descriptor. Entry i becomes the
// oriented edges 2i (u -> v, inj into G_v) and 2i+1 (its inverse, inj_bar into G_u).
GraphOfGroups gog_from_json(const Json& j, const std::string& path);
Json gog_to_json(const GraphOfGroups& gog);

// ["g", v, idx, "e", edge, ...]; consecutive elements at one vertex multiply.
GroupWord word_from_json(const Json& j, const GraphOfGroups& gog, const std::string& path);
Json word_to_json(const GroupWord& w, const GraphOfGroups& gog);

Json tree_to_json(const TreeBall& t);
std::string tree_to_dot(const TreeBall& t);
Json ball_to_json(const GGraphBall& b);
std::string ball_to_dot(const GGraphBall& b);
Json complex_to_json(const TwoComplexBall& x);
// "CELLS v e f" header, then one line per 0-, 1- and 2-cell.
std::string complex_to_off(const TwoComplexBall& x);

}  // namespace relhyp
