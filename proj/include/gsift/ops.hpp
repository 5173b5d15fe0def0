#pragma once

#include <cstdint>
#include <vector>

#include "gsift/element.hpp"

namespace gsift {

// Counts group multiplications. Inversion books as one multiplication;
// equality tests are free.
struct MultCounter {
  uint64_t count = 0;
  void add(uint64_t n = 1) { count += n; }
  void reset() { count = 0; }
};

// Counted black-box operations. Everything the probabilistic machinery does
// to group elements goes through one of these.
class Ops {
 public:
  explicit Ops(MultCounter& counter) : counter_(&counter) {}

  Element mul(const Element& a, const Element& b);
  Element inv(const Element& a);
  // b^-1 a b; costs 3, or 2 via conj_given_inverse when b^-1 is already held
  Element conj(const Element& a, const Element& b);
  Element conj_given_inverse(const Element& b_inv, const Element& a, const Element& b);
  // a^e by repeated squaring; at most 2*floor(log2 |e|) + 1 multiplications,
  // plus one for the inversion when e < 0
  Element pow(const Element& a, int64_t e);

  MultCounter& counter() { return *counter_; }

 private:
  MultCounter* counter_;
};

// Decides "order(g) lies in I" exactly for a finite candidate set I: the
// order is exactly n iff g^n = 1 and g^(n/q) != 1 for every prime q | n.
// Squarings are shared across all required powers, so a probe costs at most
// about log2(max I) * (closure_size + 1) multiplications.
class OrderProbe {
 public:
  explicit OrderProbe(std::vector<uint64_t> orders);

  bool order_in(const Element& g, Ops& ops) const;
  const std::vector<uint64_t>& orders() const { return orders_; }
  // |I together with all maximal proper divisors of members of I|
  uint64_t closure_size() const { return closure_size_; }

 private:
  std::vector<uint64_t> orders_;                 // sorted, unique
  std::vector<std::vector<uint64_t>> maximal_divisors_;
  uint64_t closure_size_ = 0;
};

// plain order computation by repeated multiplication; for offline checks
uint64_t element_order(const Element& g);

}  // namespace gsift
