#include "job.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/crc.hpp>

#include "relhyp/error.hpp"

namespace relhyp::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::schema, path + ": " + what);
}

int json_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

Element sl2z_element(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "a") return Sl2zGroup::gen_a();
    if (s == "b") return Sl2zGroup::gen_b();
    if (s == "-I") return {-1, 0, 0, -1};
    if (s == "1" || s == "identity") return {1, 0, 0, 1};
    fail(path, "unknown SL(2,Z) element '" + s + "'");
  }
  if (!j.is_array() || j.size() != 4) fail(path, "expected a name or four matrix entries");
  Element e;
  for (std::size_t i = 0; i < 4; ++i) e.push_back(json_int(j[i], at(path, i)));
  if (e[0] * e[3] - e[1] * e[2] != 1) fail(path, "matrix does not have determinant 1");
  return e;
}

Graph grid_graph(int w) {
  Graph g(w * w);
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) {
      if (i + 1 < w) g.add_edge(i * w + j, (i + 1) * w + j);
      if (j + 1 < w) g.add_edge(i * w + j, i * w + j + 1);
    }
  return g;
}

}  // namespace

Job::Job(Json spec, std::filesystem::path out_dir) : spec_(std::move(spec)), out_dir_(std::move(out_dir)) {
  if (!spec_.is_object()) fail("$", "job spec must be an object");
  auto it = spec_.find("command");
  if (it == spec_.end() || !it->is_string()) fail("$.command", "missing command name");
  command_ = it->get<std::string>();
  params_ = spec_.contains("params") ? spec_["params"] : Json::object();
  if (!params_.is_object()) fail("$.params", "expected an object");
}

int Job::int_param(const char* key, std::optional<int> fallback) const {
  auto it = params_.find(key);
  if (it == params_.end()) {
    if (!fallback) fail(std::string("$.params.") + key, "missing");
    return *fallback;
  }
  return json_int(*it, std::string("$.params.") + key);
}

bool Job::bool_param(const char* key, bool fallback) const {
  auto it = params_.find(key);
  if (it == params_.end()) return fallback;
  if (!it->is_boolean()) fail(std::string("$.params.") + key, "expected a boolean");
  return it->get<bool>();
}

std::vector<int> Job::int_list(const char* key, std::optional<std::vector<int>> fallback) const {
  const std::string path = std::string("$.params.") + key;
  auto it = params_.find(key);
  if (it == params_.end()) {
    if (!fallback) fail(path, "missing");
    return *fallback;
  }
  if (!it->is_array()) fail(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < it->size(); ++i) out.push_back(json_int((*it)[i], at(path, i)));
  return out;
}

Rational Job::rational_param(const char* key, std::optional<Rational> fallback) const {
  const std::string path = std::string("$.params.") + key;
  auto it = params_.find(key);
  if (it == params_.end()) {
    if (!fallback) fail(path, "missing");
    return *fallback;
  }
  if (it->is_number_integer()) return Rational(it->get<long long>());
  if (!it->is_string()) fail(path, "expected an exact rational such as \"1/12\"");
  std::istringstream is(it->get<std::string>());
  Rational r;
  try {
    if (!(is >> r) || is.peek() != EOF) fail(path, "malformed rational");
  } catch (const boost::bad_rational&) {
    fail(path, "zero denominator");
  }
  return r;
}

std::shared_ptr<const GraphOfGroups> Job::gog_from(const Json& j, const std::string& path) const {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "sl2z") return std::make_shared<const GraphOfGroups>(make_sl2z_amalgam());
    if (name == "c4*c6") return std::make_shared<const GraphOfGroups>(make_free_product(make_cyclic(4), make_cyclic(6)));
    if (name == "c2*c2") return std::make_shared<const GraphOfGroups>(make_free_product(make_cyclic(2), make_cyclic(2)));
    fail(path, "unknown preset '" + name + "'");
  }
  return std::make_shared<const GraphOfGroups>(gog_from_json(j, path));
}

std::shared_ptr<const GraphOfGroups> Job::gog() const {
  auto it = spec_.find("gog");
  if (it == spec_.end()) fail("$.gog", "missing");
  return gog_from(*it, "$.gog");
}

std::shared_ptr<const SyllableSpace> Job::space() const {
  return std::make_shared<const SyllableSpace>(gog(), seed());
}

GroupWord Job::word(const Json& j, const std::string& path) const {
  auto g = gog();
  if (j.is_object() && j.contains("syllables")) {
    const Json& s = j["syllables"];
    if (!s.is_array()) fail(path + ".syllables", "expected an array of [vertex, element] pairs");
    std::vector<std::pair<int, Elem>> pairs;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_array() || s[i].size() != 2) fail(at(path + ".syllables", i), "expected [vertex, element]");
      pairs.push_back({json_int(s[i][0], at(path + ".syllables", i)), json_int(s[i][1], at(path + ".syllables", i))});
    }
    try {
      return amalgam_word(*g, pairs);
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  return word_from_json(j, *g, path);
}

GroupWord Job::relator() const {
  auto it = spec_.find("relator");
  if (it == spec_.end()) fail("$.relator", "missing");
  return word(*it, "$.relator");
}

Job::GGraph Job::ggraph(int radius) const {
  auto it = spec_.find("ggraph");
  if (it == spec_.end()) fail("$.ggraph", "missing");
  return ggraph_from(*it, "$.ggraph", radius);
}

Job::GGraph Job::ggraph_from(const Json& j, const std::string& path, int radius) const {
  if (!j.is_object()) fail(path, "expected an object");
  auto kind_it = j.find("kind");
  if (kind_it == j.end() || !kind_it->is_string()) fail(path + ".kind", "missing");
  const std::string kind = kind_it->get<std::string>();
  GGraph out;
  if (kind == "tree") {
    if (!j.contains("gog")) fail(path + ".gog", "missing");
    auto g = gog_from(j["gog"], path + ".gog");
    out.base = tree_spec(g, seed());
    auto group = std::dynamic_pointer_cast<const GogGroup>(out.base.group);
    out.element = [group, g](const Json& e, const std::string& p) -> Element {
      if (e.is_string() && e.get<std::string>() == "identity") return group->identity();
      const GroupWord w = word_from_json(e, *g, p);
      if (w.base != 0 || !is_loop(w, *g)) fail(p, "elements of pi1 are loops at vertex 0");
      return group->canonical(group->encode(w));
    };
  } else if (kind == "lattice") {
    const int dim = j.contains("dim") ? json_int(j["dim"], path + ".dim") : 2;
    if (dim < 1 || dim > 8) fail(path + ".dim", "dimension must be between 1 and 8");
    auto group = std::make_shared<const LatticeGroup>(dim);
    out.base.group = group;
    out.base.tags.push_back({"pt", trivial_handle(group)});
    for (int i = 0; i < dim; ++i) {
      Element e(dim, 0);
      e[i] = 1;
      out.base.orbits.push_back({0, 0, e, "e" + std::to_string(i)});
    }
    if (j.contains("cones")) {
      const Json& c = j["cones"];
      if (!c.is_array()) fail(path + ".cones", "expected an array of axes");
      for (std::size_t i = 0; i < c.size(); ++i) {
        const int axis = json_int(c[i], at(path + ".cones", i));
        if (axis < 0 || axis >= dim) fail(at(path + ".cones", i), "axis out of range");
        const int tag = static_cast<int>(out.base.tags.size());
        out.base.tags.push_back({"H" + std::to_string(axis), lattice_axis_handle(dim, axis)});
        out.base.orbits.push_back({tag, 0, Element(dim, 0), "cone" + std::to_string(axis)});
      }
    }
    out.element = [dim](const Json& e, const std::string& p) -> Element {
      if (e.is_string() && e.get<std::string>() == "identity") return Element(dim, 0);
      if (!e.is_array() || static_cast<int>(e.size()) != dim) fail(p, "expected " + std::to_string(dim) + " integers");
      Element x;
      for (std::size_t i = 0; i < e.size(); ++i) x.push_back(json_int(e[i], at(p, i)));
      return x;
    };
  } else if (kind == "coset") {
    const std::string model = j.value("model", std::string("sl2z"));
    if (model != "sl2z") fail(path + ".model", "only the sl2z model is available");
    auto group = std::make_shared<const Sl2zGroup>();
    out.element = [](const Json& e, const std::string& p) { return sl2z_element(e, p); };
    auto elems = [&](const char* key) {
      std::vector<Element> v;
      if (!j.contains(key)) return v;
      if (!j[key].is_array()) fail(path + "." + key, "expected an array of elements");
      for (std::size_t i = 0; i < j[key].size(); ++i) v.push_back(sl2z_element(j[key][i], at(path + "." + key, i)));
      return v;
    };
    auto handle = [&](const std::vector<Element>& gens, std::string name) {
      return finite_handle(group, std::move(name), enumerate_subgroup(*group, gens, 10'000));
    };
    const auto u = elems("u");
    std::vector<SubgroupHandle> hs;
    if (j.contains("h")) {
      if (!j["h"].is_array()) fail(path + ".h", "expected an array of generator lists");
      for (std::size_t i = 0; i < j["h"].size(); ++i) {
        const Json& hj = j["h"][i];
        if (!hj.is_array()) fail(at(path + ".h", i), "expected a generator list");
        std::vector<Element> gens;
        std::string name = "<";
        for (std::size_t k = 0; k < hj.size(); ++k) {
          gens.push_back(sl2z_element(hj[k], at(at(path + ".h", i), k)));
          name += (k ? "," : "") + (hj[k].is_string() ? hj[k].get<std::string>() : group->format(gens.back()));
        }
        hs.push_back(handle(gens, name + ">"));
      }
    }
    out.base = coset_graph_spec(group, u.empty() ? trivial_handle(group) : handle(u, "U"), elems("s"), hs);
  } else {
    fail(path + ".kind", "unknown kind '" + kind + "'");
  }
  out.spec = out.base;
  if (j.contains("attach")) {
    const Json& a = j["attach"];
    if (!a.is_array()) fail(path + ".attach", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const GGraphBall gamma = build_ball(out.spec, radius, cap());
      out.attachments.push_back(attach_edge_orbit(gamma, attach_spec(out, out.spec, a[i], at(path + ".attach", i))));
      out.spec = out.attachments.back().delta;
    }
  }
  return out;
}

VertexRef Job::vertex_ref(const GGraph& g, const Json& j, const std::string& path) const {
  if (!j.is_object()) fail(path, "expected {\"tag\": t, \"rep\": element}");
  VertexRef r;
  r.tag = j.contains("tag") ? json_int(j["tag"], path + ".tag") : 0;
  if (r.tag < 0 || r.tag >= static_cast<int>(g.spec.tags.size())) fail(path + ".tag", "tag out of range");
  r.rep = g.element(j.contains("rep") ? j["rep"] : Json("identity"), path + ".rep");
  return r;
}

AttachSpec Job::attach_spec(const GGraph& g, const GGraphSpec& spec, const Json& j, const std::string& path) const {
  if (!j.is_object()) fail(path, "expected an object");
  AttachSpec a;
  a.cone = j.value("cone", false);
  a.name = j.value("name", std::string(a.cone ? "cone" : "chord"));
  if (!j.contains("u")) fail(path + ".u", "missing");
  a.u = vertex_ref(g, j["u"], path + ".u");
  if (!a.cone) {
    if (!j.contains("v")) fail(path + ".v", "missing");
    a.v = vertex_ref(g, j["v"], path + ".v");
    return a;
  }
  if (!j.contains("h")) fail(path + ".h", "missing");
  const Json& h = j["h"];
  if (h.contains("stabilizer_of_tag")) {
    const int t = json_int(h["stabilizer_of_tag"], path + ".h.stabilizer_of_tag");
    if (t < 0 || t >= static_cast<int>(spec.tags.size())) fail(path + ".h.stabilizer_of_tag", "tag out of range");
    a.h = spec.tags[t].stabilizer;
  } else if (h.contains("generated_by")) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < h["generated_by"].size(); ++i) {
      gens.push_back(g.element(h["generated_by"][i], at(path + ".h.generated_by", i)));
    }
    a.h = finite_handle(spec.group, "H", enumerate_subgroup(*spec.group, gens, 10'000));
  } else if (h.contains("axis")) {
    auto lat = std::dynamic_pointer_cast<const LatticeGroup>(spec.group);
    if (!lat) fail(path + ".h.axis", "axis subgroups need the lattice kind");
    a.h = lattice_axis_handle(lat->dim(), json_int(h["axis"], path + ".h.axis"));
  } else {
    fail(path + ".h", "expected stabilizer_of_tag, generated_by or axis");
  }
  return a;
}

TwoComplexBall Job::graph_complex() const {
  auto it = spec_.find("graph");
  if (it == spec_.end()) fail("$.graph", "missing");
  const Json& j = *it;
  const std::string path = "$.graph";
  if (!j.is_object()) fail(path, "expected an object");
  auto size = [&](const char* key, int lo) {
    const int n = json_int(j[key], path + "." + key);
    if (n < lo || n > 100'000) fail(path + "." + key, "size out of range");
    return n;
  };
  if (j.contains("cycle")) return complex_from_graph(Graph::cycle(size("cycle", 3)));
  if (j.contains("path")) return complex_from_graph(Graph::path(size("path", 1)));
  if (j.contains("complete")) return complex_from_graph(Graph::complete(size("complete", 1)));
  if (j.contains("grid")) return complex_from_graph(grid_graph(size("grid", 1)));
  if (j.contains("wheel")) {
    const int n = size("wheel", 3);
    Graph g(n + 1);
    for (int i = 1; i <= n; ++i) {
      g.add_edge(0, i);
      g.add_edge(i, i % n + 1);
    }
    return complex_from_graph(g);
  }
  if (j.contains("edges")) {
    const int n = size("n", 1);
    Graph g(n);
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
      const Json& e = j["edges"][i];
      const std::string p = at(path + ".edges", i);
      if (!e.is_array() || e.size() != 2) fail(p, "expected [a, b]");
      const int a = json_int(e[0], p), b = json_int(e[1], p);
      if (a < 0 || b < 0 || a >= n || b >= n || a == b) fail(p, "endpoint out of range or loop");
      g.add_edge(a, b);
    }
    return complex_from_graph(g);
  }
  if (j.contains("ggraph")) {
    const int radius = json_int(j.value("radius", Json(3)), path + ".radius");
    const GGraph g = ggraph_from(j["ggraph"], path + ".ggraph", radius);
    return complex_from_ball(build_ball(g.spec, radius, cap()));
  }
  fail(path, "unknown graph descriptor");
}

std::optional<std::string> Job::write_output(const char* key, const std::string& text) const {
  auto outs = spec_.find("outputs");
  if (outs == spec_.end() || !outs->contains(key)) return std::nullopt;
  const Json& p = (*outs)[key];
  if (!p.is_string()) fail(std::string("$.outputs.") + key, "expected a path");
  const std::filesystem::path target = out_dir_ / p.get<std::string>();
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    os << text;
  }
  std::filesystem::rename(tmp, target);
  return p.get<std::string>();
}

std::string spec_digest(const Json& spec) {
  const std::string text = spec.dump();
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  std::ostringstream os;
  os << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
  return os.str();
}

Json provenance(const Job& job) {
  Json h;
  h["toolkit"] = "relhyp";
  h["version"] = kVersion;
  h["command"] = job.command();
  h["spec_digest"] = spec_digest(job.spec());
  h["seeds"] = {{"transversal", job.seed()}, {"sample", job.sample_seed()}};
  h["cap"] = job.cap();
  return h;
}

}  // namespace relhyp::cli
