#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "relhyp/graph_of_groups.hpp"

namespace relhyp {

// One syllable of an element written in a free-product-like factor system.
// For finite factors value is an element index; for infinite cyclic factors it
// is an exponent.
struct Syllable {
  int factor = 0;
  std::int64_t value = 0;
  auto operator<=>(const Syllable&) const = default;
};

using SylWord = std::vector<Syllable>;

// free_product: all edge groups trivial, so pi1 is the free product of the
// vertex groups and one infinite cyclic factor per non-tree edge pair.
// amalgam: a two-vertex one-edge graph A *_C B; syllables alternate between
// factor 0 (A) and factor 1 (B) and equality goes through normal forms.
enum class SyllableMode { free_product, amalgam };

class SyllableSpace {
 public:
  explicit SyllableSpace(std::shared_ptr<const GraphOfGroups> gog, unsigned seed = 0);

  SyllableMode mode() const noexcept { return mode_; }
  const GraphOfGroups& gog() const noexcept { return *gog_; }
  std::shared_ptr<const GraphOfGroups> gog_ptr() const noexcept { return gog_; }
  const Transversals& transversals() const noexcept { return t_; }

  int num_factors() const noexcept { return static_cast<int>(factor_order_.size()); }
  bool factor_finite(int f) const { return factor_order_[f] > 0; }
  // 0 for infinite cyclic factors.
  int factor_order(int f) const { return factor_order_[f]; }
  std::int64_t mul(int f, std::int64_t a, std::int64_t b) const;
  std::int64_t inv(int f, std::int64_t a) const;
  // Syllable lies in the amalgamated subgroup (always false in free mode
  // except for the identity).
  bool in_edge_group(const Syllable& s) const;

  // Canonical representative; equal elements have equal canonical words.
  SylWord normalize(const SylWord& w) const;
  SylWord multiply(const SylWord& a, const SylWord& b) const;
  SylWord inverse(const SylWord& w) const;
  bool equal(const SylWord& a, const SylWord& b) const { return normalize(a) == normalize(b); }
  bool is_identity(const SylWord& w) const { return normalize(w).empty(); }
  // Repeatedly conjugates by the last syllable until first and last factors
  // differ; returns the core and the conjugator c with w = c core c^-1.
  std::pair<SylWord, SylWord> cyclic_core(const SylWord& w) const;
  bool cyclically_reduced(const SylWord& canonical) const;
  // Cyclic rotation by one syllable, renormalized.
  SylWord rotate(const SylWord& w) const;
  SylWord power(const SylWord& w, int m) const;

  SylWord from_word(const GroupWord& w) const;
  // Reduced loop word at vertex 0.
  GroupWord to_word(const SylWord& w) const;

  std::string format(const SylWord& w) const;
  std::string factor_name(int f) const;

 private:
  std::shared_ptr<const GraphOfGroups> gog_;
  Transversals t_;
  SyllableMode mode_;
  std::vector<int> factor_order_;
  std::vector<int> pair_edge_;  // infinite factor -> canonical non-tree edge
  std::vector<int> edge_pair_;  // edge -> infinite factor index or -1
};

}  // namespace relhyp
