#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsift/element.hpp"
#include "gsift/rational.hpp"
#include "gsift/slp.hpp"

namespace gsift {

// A fully enumerated finite group, the ground truth everything fast is
// checked against. Enumeration is breadth-first over right multiplication by
// the generators, so every element carries a shortest-available positive word
// (parent links). Subsets are handled as sorted index vectors.
class EnumeratedGroup {
 public:
  static EnumeratedGroup enumerate(std::vector<Element> generators,
                                   uint64_t cap = 10'000'000);

  uint64_t order() const { return elements_.size(); }
  const std::vector<Element>& generators() const { return generators_; }
  const Element& at(uint32_t index) const { return elements_[index]; }
  std::optional<uint32_t> index_of(const Element& g) const;
  bool contains(const Element& g) const { return index_of(g).has_value(); }
  uint32_t identity_index() const { return 0; }

  // positive word in the generators reaching this element, as a program
  Slp word_for(uint32_t index) const;
  uint32_t word_length(uint32_t index) const;

  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t conj(uint32_t a, uint32_t x) const;  // x^-1 a x
  uint64_t order_of(uint32_t a) const;

  std::vector<uint32_t> all() const;
  std::vector<uint32_t> centralizer(const Element& a) const;
  std::vector<uint32_t> centralizer_in(const std::vector<uint32_t>& sub, const Element& a) const;
  std::vector<uint32_t> subgroup_closure(const std::vector<uint32_t>& gens) const;
  // elements of `sub` normalizing `target` (both must be index sets)
  std::vector<uint32_t> normalizer_in(const std::vector<uint32_t>& sub,
                                      const std::vector<uint32_t>& target) const;
  std::vector<uint32_t> cyclic_subgroup(uint32_t g) const;
  std::vector<uint32_t> conjugacy_class(uint32_t g) const;
  // class of g under conjugation by members of `sub` only
  std::vector<uint32_t> conjugacy_class_in(const std::vector<uint32_t>& sub, uint32_t g) const;
  std::vector<uint32_t> conjugate_set(const std::vector<uint32_t>& s, uint32_t x) const;
  std::vector<uint32_t> product_set(const std::vector<uint32_t>& a,
                                    const std::vector<uint32_t>& b) const;
  std::vector<uint32_t> inverse_set(const std::vector<uint32_t>& s) const;
  bool is_subgroup(const std::vector<uint32_t>& s) const;
  std::map<uint64_t, uint64_t> order_histogram(const std::vector<uint32_t>& s) const;

  std::vector<Element> elements_of(const std::vector<uint32_t>& s) const;

 private:
  EnumeratedGroup() = default;

  std::vector<Element> elements_;
  std::vector<Element> generators_;
  std::vector<uint32_t> parent_;
  std::vector<int32_t> via_gen_;  // -1 for the identity
  std::vector<std::vector<uint32_t>> buckets_;  // hash table into elements_
  uint64_t mask_ = 0;
};

// set helpers (sorted index vectors)
bool set_contains(const std::vector<uint32_t>& s, uint32_t x);
std::vector<uint32_t> set_intersect(const std::vector<uint32_t>& a,
                                    const std::vector<uint32_t>& b);
bool set_subset(const std::vector<uint32_t>& inner, const std::vector<uint32_t>& outer);

}  // namespace gsift
