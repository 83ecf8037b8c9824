#include "relhyp/tokens.hpp"

#include <cstdlib>
#include <sstream>

#include "relhyp/error.hpp"

namespace relhyp {

SyllableSpace::SyllableSpace(std::shared_ptr<const GraphOfGroups> gog, unsigned seed)
    : gog_(std::move(gog)), t_(*gog_, seed) {
  const GraphOfGroups& g = *gog_;
  if (g.all_edge_groups_trivial()) {
    mode_ = SyllableMode::free_product;
    for (int v = 0; v < g.num_vertices(); ++v) factor_order_.push_back(g.vertex_group(v).order());
    edge_pair_.assign(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.is_tree_edge(e) || g.bar(e) < e) continue;
      const int f = static_cast<int>(factor_order_.size());
      factor_order_.push_back(0);
      pair_edge_.push_back(e);
      edge_pair_[e] = f;
      edge_pair_[g.bar(e)] = f;
    }
  } else if (g.kind() == GogKind::amalgam) {
    mode_ = SyllableMode::amalgam;
    factor_order_ = {g.vertex_group(0).order(), g.vertex_group(1).order()};
  } else {
    throw Error(ErrorKind::unsupported,
                "syllable view needs trivial edge groups or a single amalgam");
  }
}

std::int64_t SyllableSpace::mul(int f, std::int64_t a, std::int64_t b) const {
  if (!factor_finite(f)) return a + b;
  return gog_->vertex_group(f).mul(static_cast<Elem>(a), static_cast<Elem>(b));
}

std::int64_t SyllableSpace::inv(int f, std::int64_t a) const {
  if (!factor_finite(f)) return -a;
  return gog_->vertex_group(f).inv(static_cast<Elem>(a));
}

bool SyllableSpace::in_edge_group(const Syllable& s) const {
  if (mode_ == SyllableMode::free_product) return s.value == 0;
  return gog_->image(s.factor == 0 ? 1 : 0).contains(static_cast<Elem>(s.value));
}

namespace {

SylWord merge_stack(const SylWord& w, const SyllableSpace& sp) {
  SylWord out;
  for (const Syllable& s : w) {
    if (s.value == 0) continue;
    if (!out.empty() && out.back().factor == s.factor) {
      out.back().value = sp.mul(s.factor, out.back().value, s.value);
      if (out.back().value == 0) out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

SylWord SyllableSpace::normalize(const SylWord& w) const {
  for (const Syllable& s : w) {
    if (s.factor < 0 || s.factor >= num_factors()) {
      throw Error(ErrorKind::invalid_word, "syllable factor out of range");
    }
    if (factor_finite(s.factor) && (s.value < 0 || s.value >= factor_order(s.factor))) {
      throw Error(ErrorKind::invalid_element, "syllable element out of range");
    }
  }
  if (mode_ == SyllableMode::free_product) return merge_stack(w, *this);
  return from_word(to_word(w));
}

SylWord SyllableSpace::multiply(const SylWord& a, const SylWord& b) const {
  SylWord c = a;
  c.insert(c.end(), b.begin(), b.end());
  return normalize(c);
}

SylWord SyllableSpace::inverse(const SylWord& w) const {
  SylWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->factor, inv(it->factor, it->value)});
  return normalize(out);
}

bool SyllableSpace::cyclically_reduced(const SylWord& w) const {
  return w.size() < 2 || w.front().factor != w.back().factor;
}

std::pair<SylWord, SylWord> SyllableSpace::cyclic_core(const SylWord& w) const {
  SylWord core = normalize(w);
  SylWord conj;
  while (!cyclically_reduced(core)) {
    const Syllable last = core.back();
    SylWord c{{last.factor, inv(last.factor, last.value)}};
    core = multiply(multiply(inverse(c), core), c);
    conj = multiply(conj, c);
  }
  return {core, conj};
}

SylWord SyllableSpace::rotate(const SylWord& w) const {
  if (w.size() < 2) return w;
  SylWord r(w.begin() + 1, w.end());
  r.push_back(w.front());
  return normalize(r);
}

SylWord SyllableSpace::power(const SylWord& w, int m) const {
  const SylWord base = m < 0 ? inverse(w) : normalize(w);
  SylWord out;
  for (int i = 0; i < std::abs(m); ++i) out.insert(out.end(), base.begin(), base.end());
  return normalize(out);
}

SylWord SyllableSpace::from_word(const GroupWord& w0) const {
  const GraphOfGroups& g = *gog_;
  check_word(w0, g);
  if (!is_loop(w0, g)) throw Error(ErrorKind::invalid_word, "syllable view needs a loop");
  GroupWord w = w0;
  if (w.base != 0) {
    const GroupWord q = tree_path_word(g, w.base);
    w = concat(concat(q, w, g), relhyp::inverse(q, g), g);
  }
  SylWord out;
  if (mode_ == SyllableMode::free_product) {
    int v = 0;
    for (std::size_t i = 0; i < w.elems.size(); ++i) {
      out.push_back({v, w.elems[i]});
      if (i < w.edges.size()) {
        const int e = w.edges[i];
        const int f = edge_pair_[e];
        if (f >= 0) out.push_back({f, e == pair_edge_[f - g.num_vertices()] ? 1 : -1});
        v = g.terminus(e);
      }
    }
    return merge_stack(out, *this);
  }
  const GroupWord nf = reduce(w, g, t_).word;
  int v = 0;
  for (std::size_t i = 0; i < nf.elems.size(); ++i) {
    out.push_back({v, nf.elems[i]});
    if (i < nf.edges.size()) v = g.terminus(nf.edges[i]);
  }
  out = merge_stack(out, *this);
  if (out.size() >= 2 && in_edge_group(out.front())) {
    const int f = out.front().factor;
    const Elem c = *g.inj(f == 0 ? 1 : 0).preimage(static_cast<Elem>(out.front().value));
    const Elem moved = g.inj(f == 0 ? 0 : 1)(c);
    out[1].value = mul(out[1].factor, moved, out[1].value);
    out.erase(out.begin());
  }
  return out;
}

GroupWord SyllableSpace::to_word(const SylWord& w) const {
  const GraphOfGroups& g = *gog_;
  if (mode_ == SyllableMode::amalgam) {
    std::vector<std::pair<int, Elem>> syl;
    for (const Syllable& s : w) syl.emplace_back(s.factor, static_cast<Elem>(s.value));
    return reduce(amalgam_word(g, syl), g, t_).word;
  }
  GroupWord acc = identity_word(g, 0);
  for (const Syllable& s : w) {
    if (factor_finite(s.factor)) {
      const GroupWord q = tree_path_word(g, s.factor);
      acc = concat(acc, concat(concat(q, element_word(g, s.factor, static_cast<Elem>(s.value)), g),
                               relhyp::inverse(q, g), g),
                   g);
      continue;
    }
    int e = pair_edge_[s.factor - g.num_vertices()];
    if (s.value < 0) e = g.bar(e);
    GroupWord step = tree_path_word(g, g.origin(e));
    step.edges.push_back(e);
    step.elems.push_back(0);
    step = concat(step, relhyp::inverse(tree_path_word(g, g.terminus(e)), g), g);
    for (std::int64_t i = 0; i < std::llabs(s.value); ++i) acc = concat(acc, step, g);
  }
  return reduce(acc, g, t_).word;
}

std::string SyllableSpace::factor_name(int f) const {
  if (mode_ == SyllableMode::amalgam) return f == 0 ? "A" : "B";
  if (factor_finite(f)) return "v" + std::to_string(f);
  return "t" + std::to_string(f - gog_->num_vertices());
}

std::string SyllableSpace::format(const SylWord& w) const {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) os << " ";
    const Syllable& s = w[i];
    if (factor_finite(s.factor)) {
      os << factor_name(s.factor) << ":" << gog_->vertex_group(s.factor).name(static_cast<Elem>(s.value));
    } else {
      os << factor_name(s.factor) << "^" << s.value;
    }
  }
  return os.str();
}

}  // namespace relhyp
