#include "gsift/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace gsift {

namespace {

uint64_t table_size_for(uint64_t n) {
  uint64_t size = 16;
  while (size < n * 2) size <<= 1;
  return size;
}

}  // namespace

EnumeratedGroup EnumeratedGroup::enumerate(std::vector<Element> generators, uint64_t cap) {
  if (generators.empty()) throw std::invalid_argument("enumerate needs generators");
  EnumeratedGroup g;
  g.generators_ = std::move(generators);

  // start small and rehash as the group grows
  auto rehash = [&g](uint64_t buckets) {
    g.mask_ = buckets - 1;
    g.buckets_.assign(buckets, {});
    for (uint32_t i = 0; i < g.elements_.size(); ++i)
      g.buckets_[g.elements_[i].hash() & g.mask_].push_back(i);
  };
  auto find = [&g](const Element& e) -> std::optional<uint32_t> {
    for (uint32_t i : g.buckets_[e.hash() & g.mask_])
      if (g.elements_[i] == e) return i;
    return std::nullopt;
  };
  auto insert = [&g](Element e, uint32_t parent, int32_t gen) {
    g.buckets_[e.hash() & g.mask_].push_back(static_cast<uint32_t>(g.elements_.size()));
    g.elements_.push_back(std::move(e));
    g.parent_.push_back(parent);
    g.via_gen_.push_back(gen);
  };

  rehash(1024);
  insert(Element::identity_like(g.generators_.front()), 0, -1);
  std::deque<uint32_t> queue = {0};
  while (!queue.empty()) {
    uint32_t cur = queue.front();
    queue.pop_front();
    for (size_t s = 0; s < g.generators_.size(); ++s) {
      Element next = multiply(g.elements_[cur], g.generators_[s]);
      if (find(next)) continue;
      if (g.elements_.size() >= cap)
        throw std::runtime_error("enumeration exceeded cap of " + std::to_string(cap));
      insert(std::move(next), cur, static_cast<int32_t>(s));
      queue.push_back(static_cast<uint32_t>(g.elements_.size() - 1));
      if (g.elements_.size() * 2 > g.buckets_.size())
        rehash(table_size_for(g.elements_.size()));
    }
  }
  return g;
}

std::optional<uint32_t> EnumeratedGroup::index_of(const Element& e) const {
  for (uint32_t i : buckets_[e.hash() & mask_])
    if (elements_[i] == e) return i;
  return std::nullopt;
}

Slp EnumeratedGroup::word_for(uint32_t index) const {
  uint32_t slots = static_cast<uint32_t>(generators_.size());
  if (via_gen_[index] < 0) return Slp::identity(slots);
  std::vector<int32_t> gens;
  for (uint32_t cur = index; via_gen_[cur] >= 0; cur = parent_[cur])
    gens.push_back(via_gen_[cur]);
  std::reverse(gens.begin(), gens.end());
  std::vector<SlpOp> code;
  uint32_t acc = static_cast<uint32_t>(gens[0]);
  for (size_t i = 1; i < gens.size(); ++i) {
    code.push_back({SlpOp::Kind::mul, acc, static_cast<uint32_t>(gens[i]), 0});
    acc = slots + static_cast<uint32_t>(code.size()) - 1;
  }
  return Slp(slots, std::move(code), acc);
}

uint32_t EnumeratedGroup::word_length(uint32_t index) const {
  uint32_t len = 0;
  for (uint32_t cur = index; via_gen_[cur] >= 0; cur = parent_[cur]) ++len;
  return len;
}

uint32_t EnumeratedGroup::mul(uint32_t a, uint32_t b) const {
  auto idx = index_of(multiply(elements_[a], elements_[b]));
  if (!idx) throw std::logic_error("product escaped the enumerated group");
  return *idx;
}

uint32_t EnumeratedGroup::inv(uint32_t a) const {
  auto idx = index_of(inverse(elements_[a]));
  if (!idx) throw std::logic_error("inverse escaped the enumerated group");
  return *idx;
}

uint32_t EnumeratedGroup::conj(uint32_t a, uint32_t x) const {
  Element xi = inverse(elements_[x]);
  auto idx = index_of(multiply(multiply(xi, elements_[a]), elements_[x]));
  if (!idx) throw std::logic_error("conjugate escaped the enumerated group");
  return *idx;
}

uint64_t EnumeratedGroup::order_of(uint32_t a) const { return element_order(elements_[a]); }

std::vector<uint32_t> EnumeratedGroup::all() const {
  std::vector<uint32_t> v(elements_.size());
  for (uint32_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

std::vector<uint32_t> EnumeratedGroup::centralizer(const Element& a) const {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < elements_.size(); ++i)
    if (multiply(elements_[i], a) == multiply(a, elements_[i])) out.push_back(i);
  return out;
}

std::vector<uint32_t> EnumeratedGroup::centralizer_in(const std::vector<uint32_t>& sub,
                                                      const Element& a) const {
  std::vector<uint32_t> out;
  for (uint32_t i : sub)
    if (multiply(elements_[i], a) == multiply(a, elements_[i])) out.push_back(i);
  return out;
}

std::vector<uint32_t> EnumeratedGroup::subgroup_closure(const std::vector<uint32_t>& gens) const {
  std::vector<bool> seen(elements_.size(), false);
  std::vector<uint32_t> members = {identity_index()};
  seen[identity_index()] = true;
  std::deque<uint32_t> queue = {identity_index()};
  while (!queue.empty()) {
    uint32_t cur = queue.front();
    queue.pop_front();
    for (uint32_t s : gens) {
      uint32_t next = mul(cur, s);
      if (!seen[next]) {
        seen[next] = true;
        members.push_back(next);
        queue.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<uint32_t> EnumeratedGroup::normalizer_in(const std::vector<uint32_t>& sub,
                                                     const std::vector<uint32_t>& target) const {
  std::vector<uint32_t> out;
  for (uint32_t x : sub) {
    bool ok = true;
    for (uint32_t t : target) {
      if (!set_contains(target, conj(t, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<uint32_t> EnumeratedGroup::cyclic_subgroup(uint32_t g) const {
  std::vector<uint32_t> out = {identity_index()};
  uint32_t cur = g;
  while (cur != identity_index()) {
    out.push_back(cur);
    cur = mul(cur, g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint32_t> EnumeratedGroup::conjugacy_class(uint32_t g) const {
  return conjugacy_class_in(all(), g);
}

std::vector<uint32_t> EnumeratedGroup::conjugacy_class_in(const std::vector<uint32_t>& sub,
                                                          uint32_t g) const {
  // breadth-first conjugation by a generating handful of sub would be enough,
  // but scanning sub keeps this independent of how sub was produced
  std::vector<uint32_t> out;
  std::vector<bool> seen(elements_.size(), false);
  for (uint32_t x : sub) {
    uint32_t c = conj(g, x);
    if (!seen[c]) {
      seen[c] = true;
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint32_t> EnumeratedGroup::conjugate_set(const std::vector<uint32_t>& s,
                                                     uint32_t x) const {
  std::vector<uint32_t> out;
  out.reserve(s.size());
  for (uint32_t a : s) out.push_back(conj(a, x));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint32_t> EnumeratedGroup::product_set(const std::vector<uint32_t>& a,
                                                   const std::vector<uint32_t>& b) const {
  std::vector<bool> seen(elements_.size(), false);
  std::vector<uint32_t> out;
  for (uint32_t x : a) {
    for (uint32_t y : b) {
      uint32_t p = mul(x, y);
      if (!seen[p]) {
        seen[p] = true;
        out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint32_t> EnumeratedGroup::inverse_set(const std::vector<uint32_t>& s) const {
  std::vector<uint32_t> out;
  out.reserve(s.size());
  for (uint32_t x : s) out.push_back(inv(x));
  std::sort(out.begin(), out.end());
  return out;
}

bool EnumeratedGroup::is_subgroup(const std::vector<uint32_t>& s) const {
  if (s.empty() || !set_contains(s, identity_index())) return false;
  for (uint32_t x : s)
    for (uint32_t y : s)
      if (!set_contains(s, mul(x, y))) return false;
  return true;
}

std::map<uint64_t, uint64_t> EnumeratedGroup::order_histogram(
    const std::vector<uint32_t>& s) const {
  std::map<uint64_t, uint64_t> h;
  for (uint32_t i : s) ++h[order_of(i)];
  return h;
}

std::vector<Element> EnumeratedGroup::elements_of(const std::vector<uint32_t>& s) const {
  std::vector<Element> out;
  out.reserve(s.size());
  for (uint32_t i : s) out.push_back(elements_[i]);
  return out;
}

bool set_contains(const std::vector<uint32_t>& s, uint32_t x) {
  return std::binary_search(s.begin(), s.end(), x);
}

std::vector<uint32_t> set_intersect(const std::vector<uint32_t>& a,
                                    const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_subset(const std::vector<uint32_t>& inner, const std::vector<uint32_t>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace gsift
