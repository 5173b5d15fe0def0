#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsift/chain.hpp"
#include "gsift/oracle.hpp"

namespace chainforge {

// Abort chain construction instead of emitting data the oracle would reject.
void require(bool cond, const std::string& what);

// Assembles a ChainSpec against an enumerated group. Elements are referred
// to by enumeration index; the first time an index is named the forge
// splices its breadth-first generator word into the shared tape, so every
// def resolves to a tape operand the chain compiler can evaluate.
class Forge {
 public:
  Forge(const gsift::EnumeratedGroup& G, std::string chain_name, std::string group_label);

  const gsift::EnumeratedGroup& group() const { return G_; }

  // Names an element and claims its true order. Naming the identity returns
  // the reserved name; renaming an already named element returns its first
  // name, so candidate lists can overlap freely.
  std::string def(const std::string& name, uint32_t idx);
  std::vector<std::string> def_list(const std::string& stem, const std::vector<uint32_t>& idxs);

  void conjugator(const std::string& name);
  void begin_stage();
  gsift::StepSpec& step();

  gsift::ChainSpec take();

 private:
  uint32_t operand_of(uint32_t idx);

  const gsift::EnumeratedGroup& G_;
  gsift::ChainSpec spec_;
  std::map<uint32_t, uint32_t> operand_memo_;
  std::map<uint32_t, std::string> name_of_;
};

// ---- deterministic structure searches (ascending index scans) ----

// least-index element with the given order and conjugacy class size
uint32_t class_element(const gsift::EnumeratedGroup& G, uint64_t order, uint64_t class_size);
// same, restricted to a pool of candidates
uint32_t class_element_in(const gsift::EnumeratedGroup& G, const std::vector<uint32_t>& pool,
                          uint64_t order, uint64_t class_size);

// left coset representatives of M inside L (M a subgroup of L, both sorted);
// the identity coset is represented by L's least element
std::vector<uint32_t> left_transversal(const gsift::EnumeratedGroup& G,
                                       const std::vector<uint32_t>& L,
                                       const std::vector<uint32_t>& M);

// a short generating list for H (tries 2, then 3, then 4 elements of H in
// index order; aborts if none of the attempts closes to H)
std::vector<uint32_t> generating_set(const gsift::EnumeratedGroup& G,
                                     const std::vector<uint32_t>& H);

// subgroup generated by all commutators of H (intended for small H)
std::vector<uint32_t> derived_subgroup(const gsift::EnumeratedGroup& G,
                                       const std::vector<uint32_t>& H);

// ---- recipes ----
// Each returns a spec whose every declared quantity (p, tsize, element
// orders) was recomputed with the same oracle routines verify-chain runs.

gsift::ChainSpec forge_m11_involution(const gsift::EnumeratedGroup& G);
gsift::ChainSpec forge_m11_eleven(const gsift::EnumeratedGroup& G);
gsift::ChainSpec forge_m12_involution(const gsift::EnumeratedGroup& G);
gsift::ChainSpec forge_m22_involution(const gsift::EnumeratedGroup& G);
gsift::ChainSpec forge_j2_eight(const gsift::EnumeratedGroup& G);
gsift::ChainSpec forge_j2_involution(const gsift::EnumeratedGroup& G);

}  // namespace chainforge
