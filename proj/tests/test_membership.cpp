#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "gsift/element.hpp"
#include "gsift/group_io.hpp"
#include "gsift/membership.hpp"
#include "gsift/ops.hpp"
#include "gsift/oracle.hpp"
#include "gsift/oracle_params.hpp"
#include "gsift/random.hpp"

using namespace gsift;

namespace {

Element perm(std::initializer_list<uint32_t> images) {
  return Element::permutation(std::vector<uint32_t>(images));
}

const EnumeratedGroup& s4() {
  static EnumeratedGroup G =
      EnumeratedGroup::enumerate({perm({1, 2, 3, 0}), perm({1, 0, 2, 3})});
  return G;
}

const EnumeratedGroup& m11() {
  static EnumeratedGroup G = [] {
    Group g = load_group("data/groups/m11-p11.grp");
    return EnumeratedGroup::enumerate(g.generators);
  }();
  return G;
}

// the unique subgroup class of order 660 (point-transitive, simple): found by
// closing an element of order 11 with involutions until the order matches
std::vector<uint32_t> l2_11_in_m11() {
  const EnumeratedGroup& G = m11();
  uint32_t x11 = 0;
  for (uint32_t i = 0; i < G.order(); ++i)
    if (G.order_of(i) == 11) {
      x11 = i;
      break;
    }
  for (uint32_t t = 0; t < G.order(); ++t) {
    if (G.order_of(t) != 2) continue;
    std::vector<uint32_t> sub = G.subgroup_closure({x11, t});
    if (sub.size() == 660) return sub;
  }
  REQUIRE(false);
  return {};
}

// all group elements a test accepts, by exhaustive scan
std::vector<uint32_t> accepted_set(const EnumeratedGroup& G, const TestPtr& t, double e,
                                   uint64_t seed) {
  MultCounter mc;
  Ops ops(mc);
  Rng rng(seed);
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < G.order(); ++i)
    if (t->test(G.at(i), e, ops, rng).member) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("centralizer test accepts exactly the centralizer") {
  const EnumeratedGroup& G = s4();
  Element a = perm({1, 0, 2, 3});
  TestPtr t = centralizer_test({a});
  CHECK(t->deterministic());
  CHECK(accepted_set(G, t, 0.01, 1) == G.centralizer(a));

  // two witnesses: intersection of the centralizers
  Element b = perm({0, 1, 3, 2});
  TestPtr both = centralizer_test({a, b});
  CHECK(accepted_set(G, both, 0.01, 1) ==
        set_intersect(G.centralizer(a), G.centralizer(b)));
}

TEST_CASE("centralizer test costs two multiplications per witness") {
  Element a = perm({1, 0, 2, 3});
  TestPtr t = centralizer_test({a});
  MultCounter mc;
  Ops ops(mc);
  Rng rng(1);
  t->test(perm({0, 1, 3, 2}), 0.01, ops, rng);
  CHECK(mc.count == 2);
}

TEST_CASE("any-centralizer reports the matching witness as its pattern") {
  const EnumeratedGroup& G = s4();
  Element a = perm({1, 0, 2, 3});   // (0 1)
  Element b = perm({0, 1, 3, 2});   // (2 3)
  TestPtr t = any_centralizer_test({a, b});
  CHECK(t->deterministic());
  // union of the two centralizers
  std::vector<uint32_t> want;
  {
    auto ca = G.centralizer(a), cb = G.centralizer(b);
    want = ca;
    want.insert(want.end(), cb.begin(), cb.end());
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
  }
  CHECK(accepted_set(G, t, 0.01, 1) == want);

  MultCounter mc;
  Ops ops(mc);
  Rng rng(1);
  // (0 1) commutes with witness 0, so the scan stops there
  TestResult r = t->test(a, 0.01, ops, rng);
  CHECK(r.member);
  CHECK(r.pattern == 0);
  // (0 1 2 3)... picks witness 1? (2 3) does not commute with (0 1)? it does.
  // use an element commuting with b only: (2 3) itself conjugated
  TestResult r2 = t->test(multiply(perm({1, 2, 0, 3}), perm({0, 1, 3, 2})), 0.01, ops, rng);
  if (r2.member) CHECK(r2.pattern >= 0);
  TestResult r3 = t->test(perm({1, 2, 3, 0}), 0.01, ops, rng);
  CHECK_FALSE(r3.member);
  CHECK(r3.pattern == -1);
}

TEST_CASE("cyclic normalizer test equals the normalizer of the cycle") {
  const EnumeratedGroup& G = s4();
  Element b = perm({1, 2, 3, 0});  // (0 1 2 3)
  TestPtr t = cyclic_normalizer_test(b, 4);
  CHECK(t->deterministic());
  std::vector<uint32_t> want = G.normalizer_in(G.all(), G.cyclic_subgroup(*G.index_of(b)));
  REQUIRE(want.size() == 8);
  CHECK(accepted_set(G, t, 0.01, 1) == want);

  // forming b^x costs three multiplications
  MultCounter mc;
  Ops ops(mc);
  Rng rng(1);
  t->test(b, 0.01, ops, rng);
  CHECK(mc.count == 3);

  // the declared order is validated
  CHECK_THROWS(cyclic_normalizer_test(b, 3));
  CHECK_THROWS(cyclic_normalizer_test(Element::identity_permutation(4), 1));
}

TEST_CASE("stored-set test compares against the list and costs nothing") {
  const EnumeratedGroup& G = s4();
  Element a = perm({1, 0, 2, 3});
  Element b = perm({0, 1, 3, 2});
  TestPtr t = stored_set_test({a, b});
  CHECK(t->deterministic());
  MultCounter mc;
  Ops ops(mc);
  Rng rng(1);
  TestResult r = t->test(a, 0.01, ops, rng);
  CHECK(r.member);
  CHECK_FALSE(t->test(perm({1, 2, 3, 0}), 0.01, ops, rng).member);
  CHECK(mc.count == 0);
  std::vector<uint32_t> want = {*G.index_of(a), *G.index_of(b)};
  std::sort(want.begin(), want.end());
  CHECK(accepted_set(G, t, 0.01, 1) == want);
}

TEST_CASE("normalizer test equals the normalizer computed by the oracle") {
  const EnumeratedGroup& G = s4();
  // the cyclic group generated by the 4-cycle, handed over as one generator
  // plus the full member list
  Element b = perm({1, 2, 3, 0});
  std::vector<uint32_t> sub = G.cyclic_subgroup(*G.index_of(b));
  TestPtr t = normalizer_test({b}, G.elements_of(sub));
  CHECK(t->deterministic());
  CHECK(accepted_set(G, t, 0.01, 1) == G.normalizer_in(G.all(), sub));

  // one inversion plus two multiplications per generator
  MultCounter mc;
  Ops ops(mc);
  Rng rng(1);
  t->test(b, 0.01, ops, rng);
  CHECK(mc.count == 3);

  // a generator outside the member list is rejected at construction
  CHECK_THROWS(normalizer_test({perm({1, 0, 2, 3})}, G.elements_of(sub)));
  CHECK_THROWS(normalizer_test({}, G.elements_of(sub)));
}

TEST_CASE("normalizer test on the Klein subgroup accepts everything") {
  const EnumeratedGroup& G = s4();
  std::vector<Element> gens = {perm({1, 0, 3, 2}), perm({2, 3, 0, 1})};
  std::vector<uint32_t> v4 = G.subgroup_closure(
      {*G.index_of(gens[0]), *G.index_of(gens[1])});
  TestPtr t = normalizer_test(gens, G.elements_of(v4));
  CHECK(accepted_set(G, t, 0.01, 1).size() == 24);  // V4 is normal in S4
}

TEST_CASE("conjugated test relocates the acceptance set") {
  const EnumeratedGroup& G = s4();
  Element a = perm({1, 0, 2, 3});
  // accept x iff a^x lies in the stored pair {a, (2 3)}
  Element b = perm({0, 1, 3, 2});
  TestPtr t = conjugated_test(a, stored_set_test({a, b}));
  std::vector<uint32_t> want;
  uint32_t ai = *G.index_of(a);
  for (uint32_t x = 0; x < G.order(); ++x) {
    uint32_t c = G.conj(ai, x);
    if (G.at(c) == a || G.at(c) == b) want.push_back(x);
  }
  CHECK(accepted_set(G, t, 0.01, 1) == want);

  MultCounter mc;
  Ops ops(mc);
  Rng rng(1);
  t->test(a, 0.01, ops, rng);
  CHECK(mc.count == 3);  // the inner stored-set lookup is free
}

TEST_CASE("conjunction requires every part and keeps the last pattern") {
  const EnumeratedGroup& G = s4();
  Element a = perm({1, 0, 2, 3});
  Element b = perm({0, 1, 3, 2});
  TestPtr t = all_of({centralizer_test({a}), any_centralizer_test({b})});
  CHECK(accepted_set(G, t, 0.01, 1) ==
        set_intersect(G.centralizer(a), G.centralizer(b)));
  MultCounter mc;
  Ops ops(mc);
  Rng rng(1);
  TestResult r = t->test(b, 0.01, ops, rng);
  CHECK(r.member);
  CHECK(r.pattern == 0);  // index reported by the any-centralizer part
  CHECK(t->deterministic());
}

TEST_CASE("orders test draw counts at the frozen operating points") {
  CHECK(orders_test_draws(0.01, 3.0 / 8.0) == 10);
  CHECK(orders_test_draws(0.01, 2.0 / 7.0) == 14);
  CHECK(orders_test_draws(0.5, 0.5) == 1);
}

TEST_CASE("order fraction of the excluded orders inside M11 is 3/8") {
  const EnumeratedGroup& G = m11();
  CHECK(element_order_profile(G, G.all(), {4, 8}) == Rational(3, 8));
  // and the subgroup of order 660 has no such orders at all
  std::vector<uint32_t> K = l2_11_in_m11();
  CHECK(element_order_profile(G, K, {4, 8}) == Rational(0));
}

TEST_CASE("orders test never rejects a true member") {
  const EnumeratedGroup& G = m11();
  std::vector<uint32_t> K = l2_11_in_m11();
  // generators: an 11-element and an involution inside K
  std::vector<Element> kgens;
  for (uint32_t i : K)
    if (G.order_of(i) == 11) {
      kgens.push_back(G.at(i));
      break;
    }
  for (uint32_t i : K)
    if (G.order_of(i) == 2) {
      kgens.push_back(G.at(i));
      break;
    }
  REQUIRE(kgens.size() == 2);
  TestPtr t = orders_test({4, 8}, Rational(3, 8), kgens);
  CHECK_FALSE(t->deterministic());

  MultCounter mc;
  Ops ops(mc);
  Rng rng(7);
  // exhaustive over all 660 members: one-sided means zero rejections
  uint64_t accepted = 0;
  for (uint32_t i : K)
    if (t->test(G.at(i), 0.01, ops, rng).member) ++accepted;
  CHECK(accepted == K.size());
}

TEST_CASE("orders test rejects non-members at the advertised rate") {
  const EnumeratedGroup& G = m11();
  std::vector<uint32_t> K = l2_11_in_m11();
  std::vector<Element> kgens;
  for (uint32_t i : K)
    if (G.order_of(i) == 11) {
      kgens.push_back(G.at(i));
      break;
    }
  for (uint32_t i : K)
    if (G.order_of(i) == 2) {
      kgens.push_back(G.at(i));
      break;
    }
  TestPtr t = orders_test({4, 8}, Rational(3, 8), kgens);

  MultCounter mc;
  Ops ops(mc);
  Rng rng(11);
  Rng pick(5);
  uint64_t false_accepts = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    uint32_t y;
    do {
      y = static_cast<uint32_t>(pick.below(G.order()));
    } while (set_contains(K, y));
    if (t->test(G.at(y), 0.01, ops, rng).member) ++false_accepts;
  }
  // one-sided error at most e = 0.01 per call; 200 calls make more than 10
  // false accepts vanishingly unlikely
  CHECK(false_accepts <= 10);
}

TEST_CASE("orders test validates its inputs") {
  std::vector<Element> gens = {perm({1, 2, 3, 0})};
  CHECK_THROWS(orders_test({}, Rational(1, 2), gens));          // no orders
  CHECK_THROWS(orders_test({4}, Rational(0), gens));            // p0 must be positive
  CHECK_THROWS(orders_test({4}, Rational(1, 2), {}));           // no generators
  TestPtr t = orders_test({3}, Rational(1, 2), gens);
  MultCounter mc;
  Ops ops(mc);
  Rng rng(1);
  CHECK_THROWS(t->test(perm({1, 0, 2, 3}), 0.6, ops, rng));     // e out of range
  CHECK_THROWS(t->test(perm({1, 0, 2, 3}), 0.0, ops, rng));
}
