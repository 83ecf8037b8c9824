#include "relhyp/json_io.hpp"

#include <memory>
#include <sstream>

#include "relhyp/error.hpp"

namespace relhyp {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::schema, path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::vector<Elem> as_elems(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integers");
  std::vector<Elem> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

FiniteGroup group_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a group descriptor object");
  try {
    if (j.contains("cyclic")) return make_cyclic(as_int(j["cyclic"], path + ".cyclic"));
    if (j.contains("symmetric")) return make_symmetric(as_int(j["symmetric"], path + ".symmetric"));
    if (j.contains("dihedral")) return make_dihedral(as_int(j["dihedral"], path + ".dihedral"));
    const int n = as_int(field(j, "order", path), path + ".order");
    const Json& t = field(j, "table", path);
    if (!t.is_array() || static_cast<int>(t.size()) != n) fail(path + ".table", "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<Elem>> table;
    for (int i = 0; i < n; ++i) {
      table.push_back(as_elems(t[i], path + ".table[" + std::to_string(i) + "]"));
    }
    std::vector<std::string> names;
    if (j.contains("names")) {
      if (!j["names"].is_array()) fail(path + ".names", "expected an array of strings");
      for (const auto& s : j["names"]) {
        if (!s.is_string()) fail(path + ".names", "expected an array of strings");
        names.push_back(s.get<std::string>());
      }
    }
    return FiniteGroup(std::move(table), std::move(names));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::schema) throw;
    fail(path, e.what());
  }
}

Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["order"] = g.order();
  j["table"] = g.table();
  j["names"] = g.names();
  return j;
}

GraphOfGroups gog_from_json(const Json& j, const std::string& path) {
  std::map<std::string, GroupPtr> named;
  if (j.contains("groups")) {
    if (!j["groups"].is_object()) fail(path + ".groups", "expected an object");
    for (const auto& [name, desc] : j["groups"].items()) {
      named[name] = std::make_shared<const FiniteGroup>(group_from_json(desc, path + ".groups." + name));
    }
  }
  auto ref = [&](const Json& r, const std::string& p) -> GroupPtr {
    if (r.is_string()) {
      auto it = named.find(r.get<std::string>());
      if (it == named.end()) fail(p, "unknown group '" + r.get<std::string>() + "'");
      return it->second;
    }
    return std::make_shared<const FiniteGroup>(group_from_json(r, p));
  };
  const Json& verts = field(j, "vertices", path);
  if (!verts.is_array() || verts.empty()) fail(path + ".vertices", "expected a nonempty array");
  std::vector<GroupPtr> vg;
  for (std::size_t i = 0; i < verts.size(); ++i) vg.push_back(ref(verts[i], path + ".vertices[" + std::to_string(i) + "]"));
  SerreGraph g;
  g.num_vertices = static_cast<int>(vg.size());
  std::vector<GroupPtr> eg;
  std::vector<std::vector<Elem>> inj;
  const Json& edges = j.contains("edges") ? j["edges"] : Json::array();
  if (!edges.is_array()) fail(path + ".edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = path + ".edges[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    const int u = as_int(field(e, "from", p), p + ".from");
    const int v = as_int(field(e, "to", p), p + ".to");
    if (u < 0 || v < 0 || u >= g.num_vertices || v >= g.num_vertices) fail(p, "endpoint out of range");
    auto c = ref(field(e, "group", p), p + ".group");
    g.add_edge_pair(u, v);
    eg.push_back(c);
    eg.push_back(c);
    inj.push_back(as_elems(field(e, "inj", p), p + ".inj"));
    inj.push_back(as_elems(field(e, "inj_bar", p), p + ".inj_bar"));
  }
  GraphOfGroups out(std::move(g), std::move(vg), std::move(eg), std::move(inj));
  if (!out.valid()) fail(path, out.violations().front());
  return out;
}

Json gog_to_json(const GraphOfGroups& gog) {
  Json j;
  j["vertices"] = Json::array();
  for (int v = 0; v < gog.num_vertices(); ++v) j["vertices"].push_back(group_to_json(gog.vertex_group(v)));
  j["edges"] = Json::array();
  for (int e = 0; e < gog.num_edges(); e += 2) {
    Json x;
    x["group"] = group_to_json(gog.edge_group(e));
    x["from"] = gog.origin(e);
    x["to"] = gog.terminus(e);
    x["inj"] = gog.inj(e).map;
    x["inj_bar"] = gog.inj(gog.bar(e)).map;
    j["edges"].push_back(x);
  }
  j["kind"] = to_string(gog.kind());
  return j;
}

GroupWord word_from_json(const Json& j, const GraphOfGroups& gog, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a word array");
  std::optional<GroupWord> w;
  std::size_t i = 0;
  auto at = [&](std::size_t k) { return path + "[" + std::to_string(k) + "]"; };
  int base = 0;
  bool based = false;
  while (i < j.size()) {
    if (!j[i].is_string()) fail(at(i), "expected \"g\" or \"e\"");
    const std::string tok = j[i].get<std::string>();
    if (tok == "g") {
      if (i + 2 >= j.size()) fail(at(i), "\"g\" needs a vertex and an element");
      const int v = as_int(j[i + 1], at(i + 1));
      if (v < 0 || v >= gog.num_vertices()) fail(at(i + 1), "vertex out of range");
      const int x = as_int(j[i + 2], at(i + 2));
      if (!gog.vertex_group(v).contains(x)) fail(at(i + 2), "element out of range");
      if (!w) {
        w = identity_word(gog, v);
        base = v;
        based = true;
      }
      if (end_vertex(*w, gog) != v) fail(at(i + 1), "element is not at the current vertex");
      w->elems.back() = gog.vertex_group(v).mul(w->elems.back(), x);
      i += 3;
    } else if (tok == "e") {
      if (i + 1 >= j.size()) fail(at(i), "\"e\" needs an edge index");
      const int e = as_int(j[i + 1], at(i + 1));
      if (e < 0 || e >= gog.num_edges()) fail(at(i + 1), "edge out of range");
      if (!w) {
        w = identity_word(gog, gog.origin(e));
        base = gog.origin(e);
        based = true;
      }
      if (end_vertex(*w, gog) != gog.origin(e)) fail(at(i + 1), "edge does not start at the current vertex");
      w->edges.push_back(e);
      w->elems.push_back(gog.vertex_group(gog.terminus(e)).identity());
      i += 2;
    } else {
      fail(at(i), "unknown token '" + tok + "'");
    }
  }
  if (!based) return identity_word(gog, base);
  return *w;
}

Json word_to_json(const GroupWord& w, const GraphOfGroups& gog) {
  Json j = Json::array();
  int v = w.base;
  j.push_back("g");
  j.push_back(v);
  j.push_back(w.elems[0]);
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    j.push_back("e");
    j.push_back(w.edges[i]);
    v = gog.terminus(w.edges[i]);
    j.push_back("g");
    j.push_back(v);
    j.push_back(w.elems[i + 1]);
  }
  return j;
}

Json tree_to_json(const TreeBall& t) {
  const GraphOfGroups& g = t.gog();
  Json j;
  j["radius"] = t.radius();
  j["level_counts"] = t.level_counts();
  j["vertices"] = Json::array();
  for (int i = 0; i < static_cast<int>(t.vertices().size()); ++i) {
    const TreeVertex& v = t.vertices()[i];
    Json x;
    x["id"] = i;
    x["gvertex"] = v.gvertex;
    x["level"] = v.level;
    x["degree"] = t.degree(i);
    x["label"] = to_string(v.rep, g);
    x["stabilizer_order"] = g.vertex_group(v.gvertex).order();
    j["vertices"].push_back(x);
  }
  j["edges"] = Json::array();
  for (const auto& e : t.edges()) {
    Json x;
    x["a"] = e.a;
    x["b"] = e.b;
    x["gedge"] = e.gedge;
    x["stabilizer_order"] = g.edge_group(e.gedge).order();
    j["edges"].push_back(x);
  }
  return j;
}

std::string tree_to_dot(const TreeBall& t) {
  const GraphOfGroups& g = t.gog();
  std::ostringstream os;
  os << "graph tree {\n";
  for (int i = 0; i < static_cast<int>(t.vertices().size()); ++i) {
    const TreeVertex& v = t.vertices()[i];
    os << "  n" << i << " [label=\"" << dot_escape(to_string(v.rep, g)) << "\\n|G|=" << g.vertex_group(v.gvertex).order()
       << "\", level=" << v.level << "];\n";
  }
  for (const auto& e : t.edges()) {
    os << "  n" << e.a << " -- n" << e.b << " [label=\"e" << e.gedge << " |G|=" << g.edge_group(e.gedge).order() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

Json ball_to_json(const GGraphBall& b) {
  Json j;
  j["group"] = b.group().name();
  j["radius"] = b.radius();
  j["tags"] = Json::array();
  for (const auto& t : b.spec().tags) {
    Json x;
    x["name"] = t.name;
    x["stabilizer"] = t.stabilizer.name;
    x["stabilizer_order"] = t.stabilizer.finite() ? static_cast<long>(t.stabilizer.elements->size()) : 0L;
    j["tags"].push_back(x);
  }
  j["orbits"] = Json::array();
  for (const auto& o : b.spec().orbits) {
    Json x;
    x["name"] = o.name;
    x["from"] = o.from;
    x["to"] = o.to;
    x["shift"] = b.group().format(o.shift);
    j["orbits"].push_back(x);
  }
  j["vertices"] = Json::array();
  for (int i = 0; i < b.size(); ++i) {
    const GVertex& v = b.vertices()[i];
    Json x;
    x["id"] = i;
    x["tag"] = v.tag;
    x["level"] = v.level;
    x["complete"] = v.complete;
    x["label"] = b.label(i);
    j["vertices"].push_back(x);
  }
  j["edges"] = Json::array();
  for (const auto& e : b.edges()) j["edges"].push_back(Json::array({e.a, e.b, e.orbit}));
  return j;
}

std::string ball_to_dot(const GGraphBall& b) {
  std::ostringstream os;
  os << "graph ball {\n";
  for (int i = 0; i < b.size(); ++i) {
    const GVertex& v = b.vertices()[i];
    const auto& st = b.spec().tags[v.tag].stabilizer;
    os << "  n" << i << " [label=\"" << dot_escape(b.label(i)) << "\\nstab=" << dot_escape(st.name) << "\", level="
       << v.level << "];\n";
  }
  for (const auto& e : b.edges()) {
    os << "  n" << e.a << " -- n" << e.b << " [label=\"" << dot_escape(b.spec().orbits[e.orbit].name) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

Json complex_to_json(const TwoComplexBall& x) {
  Json j;
  j["cells0"] = Json::array();
  for (int i = 0; i < x.num_vertices(); ++i) {
    Json v;
    v["id"] = i;
    v["tag"] = x.vertex_tag.empty() ? 0 : x.vertex_tag[i];
    v["label"] = x.labels.empty() ? std::to_string(i) : x.labels[i];
    v["interior"] = static_cast<bool>(x.interior[i]);
    j["cells0"].push_back(v);
  }
  j["cells1"] = Json::array();
  for (const auto& [a, b] : x.skeleton.edge_list()) j["cells1"].push_back(Json::array({a, b}));
  j["cells2"] = x.cells2;
  j["tag_names"] = x.tag_names;
  j["euler_characteristic"] = x.euler_characteristic();
  return j;
}

std::string complex_to_off(const TwoComplexBall& x) {
  std::ostringstream os;
  const auto edges = x.skeleton.edge_list();
  os << "CELLS " << x.num_vertices() << " " << edges.size() << " " << x.cells2.size() << "\n";
  for (int i = 0; i < x.num_vertices(); ++i) os << "v " << i << " " << (x.vertex_tag.empty() ? 0 : x.vertex_tag[i]) << "\n";
  for (const auto& [a, b] : edges) os << "e " << a << " " << b << "\n";
  for (const auto& c : x.cells2) {
    os << "f " << c.size();
    for (int v : c) os << " " << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace relhyp
