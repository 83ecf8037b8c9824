#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace relhyp {

using Elem = int;

// A finite group given by its multiplication table. Elements are the dense
// indices 0..order-1; names are for display only. Immutable once built.
class FiniteGroup {
 public:
  // Validates the Latin-square and identity properties and associativity
  // (exhaustively up to order 256, on 10^4 seeded random triples above).
  FiniteGroup(std::vector<std::vector<Elem>> table,
              std::vector<std::string> names = {});

  int order() const noexcept { return order_; }
  Elem identity() const noexcept { return identity_; }
  Elem mul(Elem g, Elem h) const { return table_[g * order_ + h]; }
  Elem inv(Elem g) const { return inverse_[g]; }
  int element_order(Elem g) const;
  bool contains(Elem g) const noexcept { return g >= 0 && g < order_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::string name(Elem g) const;
  std::vector<std::vector<Elem>> table() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

 private:
  int order_;
  Elem identity_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::string> names_;
};

FiniteGroup make_cyclic(int n);
// S_n acting on {0..n-1}; elements are permutations in lexicographic order,
// so index 0 is the identity.
FiniteGroup make_symmetric(int n);
// Dihedral group of order 2n: index i < n is rotation r^i, index n+i is s r^i.
FiniteGroup make_dihedral(int n);
FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b);

// A subgroup as a sorted element set. The parent pointer must outlive it.
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<Elem> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(Elem g) const;
};

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> gens);
// Throws if the set is not a subgroup.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<Elem> elements);
// Left cosets gH; the first coset is H itself, the rest ordered by their least
// element. Each coset is sorted.
std::vector<std::vector<Elem>> left_cosets(const Subgroup& h);
// Right cosets Hg, same ordering conventions.
std::vector<std::vector<Elem>> right_cosets(const Subgroup& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const Subgroup& h, Elem g);  // g H g^-1

struct GroupHom {
  const FiniteGroup* source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<Elem> map;

  Elem operator()(Elem g) const { return map[g]; }
  bool injective() const;
  Subgroup image() const;
  // Preimage of an element of the image; nullopt when outside the image.
  std::optional<Elem> preimage(Elem t) const;
};

struct HomCheck {
  bool ok = true;
  std::optional<std::pair<Elem, Elem>> violation;
  bool identity_ok = true;
};

HomCheck check_hom(const GroupHom& h);

}  // namespace relhyp
