#include "forge.hpp"

#include <algorithm>
#include <stdexcept>

namespace chainforge {

using gsift::EnumeratedGroup;
using gsift::Slp;
using gsift::SlpOp;

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error("chainforge: " + what);
}

Forge::Forge(const EnumeratedGroup& G, std::string chain_name, std::string group_label) : G_(G) {
  spec_.name = std::move(chain_name);
  spec_.group_label = std::move(group_label);
  spec_.slots = static_cast<uint32_t>(G.generators().size());
}

uint32_t Forge::operand_of(uint32_t idx) {
  auto hit = operand_memo_.find(idx);
  if (hit != operand_memo_.end()) return hit->second;

  // splice the breadth-first generator word for idx onto the shared tape,
  // rebasing its internal line references past the lines already emitted
  Slp word = G_.word_for(idx);
  uint32_t slots = spec_.slots;
  uint32_t base = static_cast<uint32_t>(spec_.tape.size());
  auto rebase = [&](uint32_t op) { return op < slots ? op : op + base; };
  for (SlpOp op : word.code()) {
    op.a = rebase(op.a);
    if (op.kind == SlpOp::Kind::mul) op.b = rebase(op.b);
    spec_.tape.push_back(op);
  }
  uint32_t operand = rebase(word.result());
  operand_memo_[idx] = operand;
  return operand;
}

std::string Forge::def(const std::string& name, uint32_t idx) {
  if (idx == G_.identity_index()) return "identity";
  auto hit = name_of_.find(idx);
  if (hit != name_of_.end()) return hit->second;
  for (const auto& d : spec_.defs)
    require(d.name != name, "definition name reused for a different element: " + name);
  gsift::DefSpec d;
  d.name = name;
  d.operand = operand_of(idx);
  d.order = G_.order_of(idx);
  spec_.defs.push_back(d);
  name_of_[idx] = name;
  return name;
}

std::vector<std::string> Forge::def_list(const std::string& stem, const std::vector<uint32_t>& idxs) {
  std::vector<std::string> names;
  names.reserve(idxs.size());
  for (size_t i = 0; i < idxs.size(); ++i)
    names.push_back(def(stem + std::to_string(i + 1), idxs[i]));
  return names;
}

void Forge::conjugator(const std::string& name) { spec_.conjugator = name; }

void Forge::begin_stage() { spec_.stages.emplace_back(); }

gsift::StepSpec& Forge::step() {
  require(!spec_.stages.empty(), "step added before any stage was opened");
  spec_.stages.back().push_back(static_cast<uint32_t>(spec_.steps.size()));
  spec_.steps.emplace_back();
  return spec_.steps.back();
}

gsift::ChainSpec Forge::take() { return std::move(spec_); }

uint32_t class_element(const EnumeratedGroup& G, uint64_t order, uint64_t class_size) {
  std::vector<uint32_t> all = G.all();
  return class_element_in(G, all, order, class_size);
}

uint32_t class_element_in(const EnumeratedGroup& G, const std::vector<uint32_t>& pool,
                          uint64_t order, uint64_t class_size) {
  for (uint32_t x : pool) {
    if (G.order_of(x) != order) continue;
    if (G.conjugacy_class(x).size() == class_size) return x;
  }
  throw std::runtime_error("chainforge: no element of order " + std::to_string(order) +
                           " with class size " + std::to_string(class_size));
}

std::vector<uint32_t> left_transversal(const EnumeratedGroup& G, const std::vector<uint32_t>& L,
                                       const std::vector<uint32_t>& M) {
  require(gsift::set_subset(M, L), "transversal: M is not contained in L");
  require(!M.empty() && L.size() % M.size() == 0, "transversal: |M| does not divide |L|");
  std::vector<bool> covered(G.order(), false);
  std::vector<uint32_t> reps;
  for (uint32_t l : L) {
    if (covered[l]) continue;
    reps.push_back(l);
    for (uint32_t m : M) covered[G.mul(l, m)] = true;
  }
  require(reps.size() == L.size() / M.size(), "transversal: coset count mismatch");
  return reps;
}

std::vector<uint32_t> generating_set(const EnumeratedGroup& G, const std::vector<uint32_t>& H) {
  require(!H.empty(), "generating_set: empty subgroup");
  uint32_t id = G.identity_index();
  std::vector<uint32_t> pool;
  for (uint32_t x : H)
    if (x != id) pool.push_back(x);
  if (pool.empty()) return {};

  // prefer few generators; scan pairs first, then extend greedily
  size_t limit = std::min<size_t>(pool.size(), 40);
  for (size_t i = 0; i < limit; ++i)
    for (size_t j = i + 1; j < limit; ++j)
      if (G.subgroup_closure({pool[i], pool[j]}).size() == H.size())
        return {pool[i], pool[j]};

  std::vector<uint32_t> gens = {pool[0]};
  std::vector<uint32_t> closed = G.subgroup_closure(gens);
  for (uint32_t x : pool) {
    if (closed.size() == H.size()) break;
    if (gsift::set_contains(closed, x)) continue;
    gens.push_back(x);
    closed = G.subgroup_closure(gens);
  }
  require(closed.size() == H.size(), "generating_set: greedy extension failed");
  return gens;
}

std::vector<uint32_t> derived_subgroup(const EnumeratedGroup& G, const std::vector<uint32_t>& H) {
  std::vector<bool> seen(G.order(), false);
  std::vector<uint32_t> comms;
  for (uint32_t x : H) {
    uint32_t xi = G.inv(x);
    for (uint32_t y : H) {
      uint32_t c = G.mul(G.mul(xi, G.inv(y)), G.mul(x, y));
      if (!seen[c]) {
        seen[c] = true;
        comms.push_back(c);
      }
    }
  }
  return G.subgroup_closure(comms);
}

}  // namespace chainforge
