#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/finite_group.hpp"
#include "relhyp/graph_of_groups.hpp"

namespace relhyp {

using Element = std::vector<std::int64_t>;

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

class ConcreteGroup {
 public:
  virtual ~ConcreteGroup() = default;
  virtual std::string name() const = 0;
  virtual Element identity() const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element inv(const Element& a) const = 0;
  virtual std::vector<Element> generators() const = 0;
  virtual std::string format(const Element& a) const;

  // When true, canonical() is constant on equality classes and equality is
  // comparison of canonical forms.
  virtual bool has_canonical() const { return false; }
  virtual Element canonical(const Element& a) const { return a; }
  virtual bool equal(const Element& a, const Element& b) const;
  // Cheap invariant constant on equality classes, if any.
  virtual std::optional<Element> fingerprint(const Element&) const { return std::nullopt; }
  // A canonical form of a lift to a covering group: equal lifts imply equal
  // elements but not conversely.
  virtual std::optional<Element> lift_key(const Element&) const { return std::nullopt; }

  bool is_identity(const Element& a) const { return equal(a, identity()); }
  Element conj(const Element& g, const Element& h) const { return mul(mul(g, h), inv(g)); }
};

using ConcretePtr = std::shared_ptr<const ConcreteGroup>;

// Subgroup given by a membership predicate, optionally with a finite element
// list and a canonical key for left cosets gH.
struct SubgroupHandle {
  std::string name;
  std::function<bool(const Element&)> contains;
  std::optional<std::vector<Element>> elements;
  std::function<Element(const Element&)> coset_key;

  bool finite() const { return elements.has_value(); }
};

SubgroupHandle finite_handle(const ConcretePtr& g, std::string name, std::vector<Element> elems);
SubgroupHandle trivial_handle(const ConcretePtr& g);
// Closure of gens under multiplication; throws cap-exceeded beyond cap elements.
std::vector<Element> enumerate_subgroup(const ConcreteGroup& g, const std::vector<Element>& gens,
                                        std::size_t cap = 100000);

class FiniteConcrete : public ConcreteGroup {
 public:
  FiniteConcrete(std::shared_ptr<const FiniteGroup> g, std::vector<Elem> gens);
  std::string name() const override;
  Element identity() const override { return {g_->identity()}; }
  Element mul(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  std::vector<Element> generators() const override;
  std::string format(const Element& a) const override;
  bool has_canonical() const override { return true; }
  const FiniteGroup& group() const { return *g_; }

 private:
  std::shared_ptr<const FiniteGroup> g_;
  std::vector<Elem> gens_;
};

// Free abelian group Z^d.
class LatticeGroup : public ConcreteGroup {
 public:
  explicit LatticeGroup(int dim);
  std::string name() const override { return "Z^" + std::to_string(dim_); }
  Element identity() const override { return Element(dim_, 0); }
  Element mul(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  std::vector<Element> generators() const override;
  std::string format(const Element& a) const override;
  bool has_canonical() const override { return true; }
  int dim() const { return dim_; }

 private:
  int dim_;
};

// Infinite cyclic subgroup generated by a basis vector of Z^d.
SubgroupHandle lattice_axis_handle(int dim, int axis);

// SL(2,Z) as integer matrices [a b c d]; generators a = [[0,-1],[1,0]] of
// order 4 and b = [[1,-1],[1,0]] of order 6.
class Sl2zGroup : public ConcreteGroup {
 public:
  std::string name() const override { return "SL2Z"; }
  Element identity() const override { return {1, 0, 0, 1}; }
  Element mul(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  std::vector<Element> generators() const override;
  std::string format(const Element& a) const override;
  bool has_canonical() const override { return true; }
  static Element gen_a() { return {0, -1, 1, 0}; }
  static Element gen_b() { return {1, -1, 1, 0}; }
};

// pi_1 of a graph of groups at vertex 0, elements as reduced loop words.
class GogGroup : public ConcreteGroup {
 public:
  explicit GogGroup(std::shared_ptr<const GraphOfGroups> gog, unsigned seed = 0);
  std::string name() const override { return "pi1"; }
  Element identity() const override;
  Element mul(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  std::vector<Element> generators() const override;
  std::string format(const Element& a) const override;
  bool has_canonical() const override { return true; }

  Element encode(const GroupWord& w) const;
  GroupWord decode(const Element& e) const;
  const GraphOfGroups& gog() const { return *gog_; }
  std::shared_ptr<const GraphOfGroups> gog_ptr() const { return gog_; }
  const Transversals& transversals() const { return t_; }
  // q_v G_v q_v^-1 and the element q_o(f) f q_t(f)^-1.
  std::vector<Element> vertex_group_conjugate(int v) const;
  Element edge_element(int f) const;

 private:
  std::shared_ptr<const GraphOfGroups> gog_;
  Transversals t_;
};

}  // namespace relhyp
