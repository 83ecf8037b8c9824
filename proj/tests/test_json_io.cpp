#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "relhyp/error.hpp"
#include "relhyp/json_io.hpp"

using namespace relhyp;

namespace {

std::string schema_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::schema);
    return e.what();
  }
  FAIL("no schema error");
  return {};
}

const Json kFreeProduct = Json::parse(R"({
  "groups": {"C4": {"cyclic": 4}, "C6": {"cyclic": 6}, "1": {"cyclic": 1}},
  "vertices": ["C4", "C6"],
  "edges": [{"group": "1", "from": 0, "to": 1, "inj": [0], "inj_bar": [0]}]})");

}  // namespace

TEST_CASE("group descriptors round-trip") {
  for (const FiniteGroup& g : {make_cyclic(5), make_symmetric(3), make_dihedral(4), make_cyclic(1)}) {
    const Json j = group_to_json(g);
    const FiniteGroup h = group_from_json(j, "$");
    CHECK(h.order() == g.order());
    CHECK(h.table() == g.table());
    CHECK(group_to_json(h) == j);
  }
  CHECK(group_from_json(Json::parse(R"({"symmetric": 3})"), "$").order() == 6);
}

TEST_CASE("graph of groups round-trips") {
  const GraphOfGroups a = gog_from_json(kFreeProduct, "$");
  CHECK(a.num_vertices() == 2);
  CHECK(a.num_edges() == 2);
  const Json j = gog_to_json(a);
  CHECK(gog_to_json(gog_from_json(j, "$")) == j);
  const GraphOfGroups s = make_sl2z_amalgam();
  const Json js = gog_to_json(s);
  const GraphOfGroups s2 = gog_from_json(js, "$");
  CHECK(gog_to_json(s2) == js);
  for (int e = 0; e < s.num_edges(); ++e) {
    CHECK(s2.origin(e) == s.origin(e));
    CHECK(s2.terminus(e) == s.terminus(e));
  }
}

TEST_CASE("words round-trip exactly") {
  const GraphOfGroups g = make_sl2z_amalgam();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const GroupWord w = oracle::random_word(g, static_cast<int>(rng() % 2), static_cast<int>(rng() % 9), rng);
    CHECK(word_from_json(word_to_json(w, g), g, "$") == w);
  }
  const GroupWord e = word_from_json(Json::array(), g, "$");
  CHECK(e == identity_word(g, 0));
  const GroupWord m = word_from_json(Json::parse(R"(["g", 0, 1, "g", 0, 2])"), g, "$");
  CHECK(m.elems == std::vector<Elem>{3});
}

TEST_CASE("schema errors name the offending path") {
  CHECK(schema_message([] { group_from_json(Json::parse(R"({"cyclic": "x"})"), "$.g"); }).find("$.g.cyclic: ") != std::string::npos);
  CHECK(schema_message([] { group_from_json(Json::parse(R"({"order": 2, "table": [[0, 1]]})"), "$.g"); })
            .find("$.g.table: ") != std::string::npos);
  CHECK(schema_message([] { group_from_json(Json::parse(R"({"order": 2, "table": [[0, 1], [0, 1]]})"), "$.g"); })
            .find("$.g: ") != std::string::npos);
  CHECK(schema_message([] { group_from_json(Json::parse("[1]"), "$.g"); }).find("$.g: ") != std::string::npos);

  Json bad = kFreeProduct;
  bad["edges"][0]["inj"] = Json::array({7});
  CHECK(schema_message([&] { gog_from_json(bad, "$.gog"); }).find("$.gog: ") != std::string::npos);
  bad = kFreeProduct;
  bad.erase("vertices");
  CHECK(schema_message([&] { gog_from_json(bad, "$.gog"); }).find("$.gog.vertices: ") != std::string::npos);
  bad = kFreeProduct;
  bad["vertices"][1] = "C9";
  CHECK(schema_message([&] { gog_from_json(bad, "$.gog"); }).find("$.gog.vertices[1]: ") != std::string::npos);

  const GraphOfGroups g = gog_from_json(kFreeProduct, "$");
  CHECK(schema_message([&] { word_from_json(Json::parse(R"(["g", 0, 9])"), g, "$.w"); }).find("$.w[2]: ") != std::string::npos);
  CHECK(schema_message([&] { word_from_json(Json::parse(R"(["g", 0, 1, "e", 1])"), g, "$.w"); }).find("$.w[4]: ") != std::string::npos);
  CHECK(schema_message([&] { word_from_json(Json::parse(R"(["x"])"), g, "$.w"); }).find("$.w[0]: ") != std::string::npos);
  CHECK(schema_message([&] { word_from_json(Json::parse(R"({})"), g, "$.w"); }).find("$.w: ") != std::string::npos);
}

TEST_CASE("exports") {
  const auto g = std::make_shared<const GraphOfGroups>(make_sl2z_amalgam());
  const TreeBall t(g, 3);
  const Json j = tree_to_json(t);
  CHECK(j["vertices"].size() == t.vertices().size());
  CHECK(j["edges"].size() == t.vertices().size() - 1);
  CHECK(tree_to_dot(t).rfind("graph", 0) != std::string::npos);
  CHECK(tree_to_json(t).dump() == j.dump());

  TwoComplexBall x = complex_from_graph(Graph::cycle(4));
  x.add_cell({0, 1, 2, 3});
  const std::string off = complex_to_off(x);
  CHECK(off.rfind("CELLS 4 4 1\n", 0) == 0);
  CHECK(off.find("f 4 0 1 2 3") != std::string::npos);
  CHECK(complex_to_json(x)["cells2"].size() == 1);
}
