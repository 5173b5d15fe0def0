#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "gsift/element.hpp"
#include "gsift/group_io.hpp"
#include "gsift/oracle.hpp"
#include "gsift/oracle_params.hpp"
#include "gsift/rational.hpp"

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

uint32_t idx(const EnumeratedGroup& G, const Element& g) {
  auto i = G.index_of(g);
  REQUIRE(i.has_value());
  return *i;
}

// brute-force target set {x in G : a^x in L}
std::vector<uint32_t> conj_target(const EnumeratedGroup& G, uint32_t a,
                                  const std::vector<uint32_t>& L) {
  std::vector<uint32_t> out;
  for (uint32_t x = 0; x < G.order(); ++x)
    if (set_contains(L, G.conj(a, x))) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("rational arithmetic and parsing") {
  Rational a(1, 6), b(13, 165);
  CHECK(a.str() == "1/6");
  CHECK(Rational(624, 7920) == b);
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-1, -2) == Rational(1, 2));
  CHECK(a * Rational(2) == Rational(1, 3));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(1, 2) / Rational(3, 2) == Rational(1, 3));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(5) == Rational(5, 1));
  CHECK(Rational::parse("13/165") == b);
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(b.to_double() == doctest::Approx(13.0 / 165.0));
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational::parse("x/y"));
}

TEST_CASE("breadth-first enumeration of S4") {
  const EnumeratedGroup& G = s4();
  CHECK(G.order() == 24);
  CHECK(G.at(G.identity_index()).is_identity());
  // every element's stored word reproduces it
  MultCounter mc;
  Ops ops(mc);
  for (uint32_t i = 0; i < G.order(); ++i) {
    Slp w = G.word_for(i);
    CHECK(w.evaluate(G.generators(), ops) == G.at(i));
  }
  CHECK(G.word_length(G.identity_index()) == 0);
}

TEST_CASE("enumeration respects the cap") {
  CHECK_THROWS(EnumeratedGroup::enumerate({perm({1, 2, 3, 0}), perm({1, 0, 2, 3})}, 10));
}

TEST_CASE("index arithmetic matches element arithmetic") {
  const EnumeratedGroup& G = s4();
  for (uint32_t a = 0; a < G.order(); a += 5) {
    for (uint32_t b = 0; b < G.order(); b += 7) {
      CHECK(G.at(G.mul(a, b)) == multiply(G.at(a), G.at(b)));
    }
    CHECK(G.at(G.inv(a)) == inverse(G.at(a)));
    CHECK(G.order_of(a) == element_order(G.at(a)));
  }
  uint32_t t = idx(G, perm({1, 0, 2, 3}));
  uint32_t c = idx(G, perm({1, 2, 3, 0}));
  CHECK(G.at(G.conj(t, c)) == multiply(multiply(inverse(G.at(c)), G.at(t)), G.at(c)));
}

TEST_CASE("subgroup machinery on S4") {
  const EnumeratedGroup& G = s4();
  uint32_t t01 = idx(G, perm({1, 0, 2, 3}));
  uint32_t t23 = idx(G, perm({0, 1, 3, 2}));
  uint32_t c4 = idx(G, perm({1, 2, 3, 0}));

  std::vector<uint32_t> cent = G.centralizer(G.at(t01));
  CHECK(cent.size() == 4);  // <(0 1), (2 3)>
  CHECK(set_contains(cent, t23));

  std::vector<uint32_t> v4 = G.subgroup_closure(
      {idx(G, perm({1, 0, 3, 2})), idx(G, perm({2, 3, 0, 1}))});
  CHECK(v4.size() == 4);
  CHECK(G.is_subgroup(v4));

  std::vector<uint32_t> c4sub = G.cyclic_subgroup(c4);
  CHECK(c4sub.size() == 4);
  std::vector<uint32_t> d8 = G.normalizer_in(G.all(), c4sub);
  CHECK(d8.size() == 8);
  CHECK(G.is_subgroup(d8));

  CHECK(G.conjugacy_class(t01).size() == 6);
  // the two diagonal reflections of the square 0-1-2-3 form one class under
  // its dihedral symmetry group
  uint32_t t02 = idx(G, perm({2, 1, 0, 3}));
  std::vector<uint32_t> cls = G.conjugacy_class_in(d8, t02);
  CHECK(cls.size() == 2);
  CHECK(set_contains(cls, idx(G, perm({0, 3, 2, 1}))));

  std::vector<uint32_t> a4 =
      G.subgroup_closure({idx(G, perm({1, 2, 0, 3})), idx(G, perm({0, 2, 3, 1}))});
  CHECK(a4.size() == 12);
  CHECK(set_subset(v4, a4));

  // product, inverse and conjugate of index sets
  std::vector<uint32_t> left = G.product_set({t01}, v4);
  CHECK(left.size() == 4);
  CHECK(G.inverse_set(left).size() == 4);
  CHECK(G.conjugate_set(v4, c4) == v4);  // V4 is normal

  auto hist = G.order_histogram(G.all());
  CHECK(hist[1] == 1);
  CHECK(hist[2] == 9);
  CHECK(hist[3] == 8);
  CHECK(hist[4] == 6);
  CHECK_FALSE(G.is_subgroup(left));
}

TEST_CASE("sorted set helpers") {
  std::vector<uint32_t> a = {1, 3, 5, 7};
  std::vector<uint32_t> b = {3, 4, 5};
  CHECK(set_contains(a, 5));
  CHECK_FALSE(set_contains(a, 4));
  CHECK(set_intersect(a, b) == std::vector<uint32_t>{3, 5});
  CHECK(set_subset({3, 5}, a));
  CHECK_FALSE(set_subset(b, a));
  CHECK(set_subset({}, a));
}

TEST_CASE("sifting parameter of a subgroup pair is the index ratio") {
  const EnumeratedGroup& G = s4();
  std::vector<uint32_t> a4 =
      G.subgroup_closure({idx(G, perm({1, 2, 0, 3})), idx(G, perm({0, 2, 3, 1}))});
  std::vector<uint32_t> v4 = G.subgroup_closure(
      {idx(G, perm({1, 0, 3, 2})), idx(G, perm({2, 3, 0, 1}))});
  // sampling from all of H: worst case |K|/|H|
  CHECK(sifting_parameter(G, a4, v4, a4) == Rational(4, 12));
  CHECK(sifting_parameter(G, G.all(), a4, G.all()) == Rational(1, 2));
  CHECK(sifting_parameter(G, a4, a4, a4) == Rational(1));
  // sampling from a subgroup L < H that misses K on some coset: parameter 0
  CHECK(sifting_parameter(G, a4, v4, v4) == Rational(0));
}

TEST_CASE("sampling a transversal gives the same parameter as the subgroup") {
  // K right-stable under L', S hitting every left L'-coset of L equally often:
  // p(H, K, S) = p(H, K, L)
  const EnumeratedGroup& G = s4();
  std::vector<uint32_t> a4 =
      G.subgroup_closure({idx(G, perm({1, 2, 0, 3})), idx(G, perm({0, 2, 3, 1}))});
  std::vector<uint32_t> v4 = G.subgroup_closure(
      {idx(G, perm({1, 0, 3, 2})), idx(G, perm({2, 3, 0, 1}))});

  auto per_coset = [&](const std::vector<uint32_t>& L, const std::vector<uint32_t>& Lp,
                       int m) {
    std::vector<uint32_t> S;
    std::vector<bool> taken(G.order(), false);
    for (uint32_t g : L) {
      if (taken[g]) continue;
      std::vector<uint32_t> coset = G.product_set({g}, Lp);
      int kept = 0;
      for (uint32_t h : coset) {
        if (kept < m) {
          S.push_back(h);
          ++kept;
        }
        taken[h] = true;
      }
    }
    std::sort(S.begin(), S.end());
    return S;
  };

  std::vector<uint32_t> trans = per_coset(a4, v4, 1);
  REQUIRE(trans.size() == 3);
  std::vector<uint32_t> two = per_coset(a4, v4, 2);
  REQUIRE(two.size() == 6);

  Rational over_L = sifting_parameter(G, a4, v4, a4);
  CHECK(over_L == Rational(1, 3));
  CHECK(sifting_parameter_over_set(G, a4, v4, trans) == over_L);
  CHECK(sifting_parameter_over_set(G, a4, v4, two) == over_L);
  // and over the subgroup L itself the set form agrees with the coset-marking form
  CHECK(sifting_parameter_over_set(G, a4, v4, a4) == over_L);
}

TEST_CASE("translated parameter with a trivial translate set is the plain one") {
  const EnumeratedGroup& G = s4();
  std::vector<uint32_t> a4 =
      G.subgroup_closure({idx(G, perm({1, 2, 0, 3})), idx(G, perm({0, 2, 3, 1}))});
  std::vector<uint32_t> v4 = G.subgroup_closure(
      {idx(G, perm({1, 0, 3, 2})), idx(G, perm({2, 3, 0, 1}))});
  std::vector<uint32_t> one = {G.identity_index()};
  CHECK(sifting_parameter_translated(G, a4, v4, a4, one) ==
        sifting_parameter(G, a4, v4, a4));
  CHECK(sifting_parameter_translated(G, G.all(), a4, G.all(), one) == Rational(1, 2));
}

TEST_CASE("sifting triple conditions are checked with diagnostics") {
  const EnumeratedGroup& G = s4();
  std::vector<uint32_t> a4 =
      G.subgroup_closure({idx(G, perm({1, 2, 0, 3})), idx(G, perm({0, 2, 3, 1}))});
  std::vector<uint32_t> v4 = G.subgroup_closure(
      {idx(G, perm({1, 0, 3, 2})), idx(G, perm({2, 3, 0, 1}))});
  CHECK(is_sifting_triple(G, a4, a4, v4));
  CHECK(sifting_parameter_exact(G, a4, a4, v4) == Rational(1));
  // empty coset: hV misses V4 for h outside V4
  CHECK_FALSE(is_sifting_triple(G, a4, v4, v4));
  CHECK_THROWS(sifting_parameter_exact(G, a4, v4, v4));
  // H not right-stable under L
  CHECK_FALSE(is_sifting_triple(G, v4, v4, a4));
  CHECK_THROWS(sifting_parameter_exact(G, v4, v4, a4));
}

TEST_CASE("M11 enumerates to order 7920 with one class of involutions") {
  const EnumeratedGroup& G = m11();
  CHECK(G.order() == 7920);
  auto hist = G.order_histogram(G.all());
  CHECK(hist[2] == 165);
  CHECK(hist[11] == 1440);
  uint32_t a = 0;
  for (uint32_t i = 0; i < G.order(); ++i)
    if (G.order_of(i) == 2) {
      a = i;
      break;
    }
  CHECK(G.conjugacy_class(a).size() == 165);
  CHECK(G.centralizer(G.at(a)).size() == 48);
}

TEST_CASE("fraction of order-11 elements in M11") {
  const EnumeratedGroup& G = m11();
  CHECK(element_order_profile(G, G.all(), {11}) == Rational(2, 11));
  CHECK(element_order_profile(G, G.all(), {2}) == Rational(165, 7920));
  CHECK(element_order_profile(G, G.all(), {2, 11}) == Rational(1605, 7920));
}

TEST_CASE("refinement sets for the M11 centralizer chain have sizes 2 and 3") {
  const EnumeratedGroup& G = m11();
  uint32_t a = 0;
  for (uint32_t i = 0; i < G.order(); ++i)
    if (G.order_of(i) == 2) {
      a = i;
      break;
    }
  std::vector<uint32_t> C = G.centralizer(G.at(a));
  REQUIRE(C.size() == 48);

  // second subgroup: the centralizer in C of a second involution b with
  // C_C(b) of order 4 (a Klein four group containing a)
  std::vector<uint32_t> L2;
  for (uint32_t b : C) {
    if (b == a || G.order_of(b) != 2) continue;
    std::vector<uint32_t> cc = G.centralizer_in(C, G.at(b));
    if (cc.size() == 4) {
      L2 = cc;
      break;
    }
  }
  REQUIRE(L2.size() == 4);
  REQUIRE(set_contains(L2, a));

  TsetChain T = build_tsets(G, G.at(a), {C, L2});
  REQUIRE(T.ok);
  CHECK(T.centralizer == C);
  REQUIRE(T.levels.size() == 2);
  CHECK(T.levels[0].tset.size() == 2);
  CHECK(T.levels[1].tset.size() == 3);

  // the target of level i is exactly {x : a^x in L_i}
  CHECK(T.levels[0].target == conj_target(G, a, C));
  CHECK(T.levels[1].target == conj_target(G, a, L2));
  CHECK(T.levels[0].target.size() == 624);   // 13 conjugates in C, each 48 ways
  CHECK(T.levels[1].target.size() == 144);   // 3 conjugates in L2, each 48 ways

  // conjugates over T_i L_i sweep exactly the class members inside L_i
  for (size_t lvl = 0; lvl < 2; ++lvl) {
    const std::vector<uint32_t>& L = (lvl == 0) ? C : L2;
    std::vector<uint32_t> got;
    for (uint32_t t : T.levels[lvl].tset)
      for (uint32_t l : L) got.push_back(G.conj(a, G.mul(t, l)));
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end()), got.end());
    CHECK(got == set_intersect(G.conjugacy_class(a), L));
  }
}

TEST_CASE("first sifting parameter of the M11 chain is 13/165") {
  const EnumeratedGroup& G = m11();
  uint32_t a = 0;
  for (uint32_t i = 0; i < G.order(); ++i)
    if (G.order_of(i) == 2) {
      a = i;
      break;
    }
  std::vector<uint32_t> C = G.centralizer(G.at(a));
  std::vector<uint32_t> K1 = conj_target(G, a, C);
  CHECK(Rational(static_cast<int64_t>(K1.size()), static_cast<int64_t>(G.order())) ==
        Rational(13, 165));
  CHECK(sifting_parameter(G, G.all(), K1, G.all()) == Rational(13, 165));
}

TEST_CASE("refinement construction fails cleanly on the Klein chain") {
  // A4 > V4 > <(0 1)(2 3)>: conjugacy classes inside the abelian V4 are
  // singletons, so two of the three involutions cannot reach the last level
  EnumeratedGroup A4 = EnumeratedGroup::enumerate(
      {perm({1, 2, 0, 3}), perm({0, 2, 3, 1})});
  REQUIRE(A4.order() == 12);
  Element av = perm({1, 0, 3, 2});
  std::vector<uint32_t> v4a;
  for (uint32_t i = 0; i < A4.order(); ++i) {
    uint64_t o = A4.order_of(i);
    if (o == 1 || o == 2) v4a.push_back(i);
  }
  REQUIRE(v4a.size() == 4);
  std::vector<uint32_t> c2a = A4.cyclic_subgroup(idx(A4, av));

  TsetChain good = build_tsets(A4, av, {v4a});
  CHECK(good.ok);
  CHECK(good.levels[0].tset.size() == 3);  // three singleton classes in V4

  TsetChain T = build_tsets(A4, av, {v4a, c2a});
  CHECK_FALSE(T.ok);
  CHECK(T.reason.find("misses the next subgroup") != std::string::npos);
}

TEST_CASE("both acceptance-ratio expressions agree on the M11 chain") {
  const EnumeratedGroup& G = m11();
  uint32_t a = 0;
  for (uint32_t i = 0; i < G.order(); ++i)
    if (G.order_of(i) == 2) {
      a = i;
      break;
    }
  std::vector<uint32_t> C = G.centralizer(G.at(a));
  std::vector<uint32_t> L2;
  for (uint32_t b : C) {
    if (b == a || G.order_of(b) != 2) continue;
    std::vector<uint32_t> cc = G.centralizer_in(C, G.at(b));
    if (cc.size() == 4) {
      L2 = cc;
      break;
    }
  }
  TsetChain T = build_tsets(G, G.at(a), {C, L2});
  REQUIRE(T.ok);

  // ratio from the whole group into L1 = C, evaluated at the level-1 reps;
  // conjugate_orbit_ratio throws if the orbit and centralizer forms disagree
  Rational worst(1);
  for (uint32_t t : T.levels[0].tset) {
    Rational r = conjugate_orbit_ratio(G, a, t, C, L2);
    if (r < worst) worst = r;
  }
  CHECK(worst == Rational(1, 6));

  // requires a^x in L
  uint32_t outside = 0;
  for (uint32_t x = 0; x < G.order(); ++x)
    if (!set_contains(C, G.conj(a, x))) {
      outside = x;
      break;
    }
  CHECK_THROWS(conjugate_orbit_ratio(G, a, outside, C, L2));
}
