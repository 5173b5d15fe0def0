#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gsift/element.hpp"
#include "gsift/ops.hpp"
#include "gsift/random.hpp"
#include "gsift/rational.hpp"

namespace gsift {

struct TestResult {
  bool member = false;
  int pattern = -1;  // which alternative matched, for tests that scan a list
};

// Membership predicate with one-sided error: a true member is always
// accepted; a non-member may be wrongly accepted with probability at most e.
// Deterministic tests ignore e.
class MembershipTest {
 public:
  virtual ~MembershipTest() = default;
  virtual TestResult test(const Element& x, double e, Ops& ops, Rng& rng) const = 0;
  virtual bool deterministic() const = 0;
  virtual std::string describe() const = 0;
};

using TestPtr = std::shared_ptr<const MembershipTest>;

// accepted iff x commutes with every witness (witness inverses are hoisted at
// construction, so each witness costs two multiplications per call)
TestPtr centralizer_test(std::vector<Element> witnesses);
// accepted iff x commutes with at least one witness; pattern = witness index
TestPtr any_centralizer_test(std::vector<Element> witnesses);
// accepted iff b^x is a nontrivial power of b, i.e. x normalizes <b>
TestPtr cyclic_normalizer_test(const Element& b, uint64_t order);
// accepted iff x equals a stored element; costs no multiplications
TestPtr stored_set_test(std::vector<Element> members);
// accepted iff every generator's conjugate by x lies in the stored member
// list, i.e. x normalizes the subgroup the generators generate; x is
// inverted once, then each generator costs two multiplications
TestPtr normalizer_test(std::vector<Element> gens, std::vector<Element> members);
// One-sided randomized test for "x lies in the subgroup K": sample
// <gens(K), x> by product replacement and reject as soon as some element's
// order lands in `orders` (orders that occur above K but never inside K).
// p0 is the guaranteed minimum proportion of such orders in any overgroup
// <K, y> with y outside K; the draw count comes from orders_test_draws.
TestPtr orders_test(std::vector<uint64_t> orders, Rational p0,
                    std::vector<Element> subgroup_gens);
// accepted iff inner accepts a^x; forming the conjugate costs three
// multiplications on top of whatever the inner test spends
TestPtr conjugated_test(const Element& a, TestPtr inner);
// conjunction; pattern is whatever the last part reported
TestPtr all_of(std::vector<TestPtr> parts);

int64_t orders_test_draws(double e, double p0);

}  // namespace gsift
