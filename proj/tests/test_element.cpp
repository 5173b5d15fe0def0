#include <cstdint>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "gsift/element.hpp"
#include "gsift/group_io.hpp"
#include "gsift/ops.hpp"

using namespace gsift;

namespace {

Element perm(std::initializer_list<uint32_t> images) {
  return Element::permutation(std::vector<uint32_t>(images));
}

}  // namespace

TEST_CASE("permutation product applies left factor first") {
  // a = (0 1 2), b = (0 1) as images
  Element a = perm({1, 2, 0});
  Element b = perm({1, 0, 2});
  Element ab = multiply(a, b);
  // (ab)[i] = b[a[i]]: 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
  CHECK(ab == perm({0, 2, 1}));
  Element ba = multiply(b, a);
  CHECK(ba == perm({2, 1, 0}));
  CHECK(ab != ba);
}

TEST_CASE("permutation inverse and identity") {
  Element a = perm({1, 2, 3, 0});
  Element e = Element::identity_permutation(4);
  CHECK(e.is_identity());
  CHECK(multiply(a, inverse(a)) == e);
  CHECK(multiply(inverse(a), a) == e);
  CHECK(Element::identity_like(a) == e);
  CHECK_FALSE(a.is_identity());
}

TEST_CASE("matrix arithmetic over a prime field") {
  // GL(2,3): x = [[1,1],[0,1]], y = [[0,2],[1,0]]
  Element x = Element::matrix(2, 3, {1, 1, 0, 1});
  Element y = Element::matrix(2, 3, {0, 2, 1, 0});
  Element e = Element::identity_matrix(2, 3);
  CHECK(e.is_identity());
  CHECK(multiply(x, inverse(x)) == e);
  CHECK(multiply(inverse(y), y) == e);
  // entries reduce mod p
  CHECK(Element::matrix(2, 3, {4, 1, 3, 1}) == x);
  // row-major product: xy = [[1*0+1*1, 1*2+1*0], [0*0+1*1, 0*2+1*0]]
  CHECK(multiply(x, y) == Element::matrix(2, 3, {1, 2, 1, 0}));
  CHECK(x.field() == 3);
  CHECK(x.degree() == 2);
}

TEST_CASE("element order by repeated multiplication") {
  CHECK(element_order(Element::identity_permutation(5)) == 1);
  CHECK(element_order(perm({1, 2, 3, 4, 0})) == 5);
  // (0 1)(2 3 4) has order 6
  CHECK(element_order(perm({1, 0, 3, 4, 2})) == 6);
  Element x = Element::matrix(2, 3, {1, 1, 0, 1});
  CHECK(element_order(x) == 3);
}

TEST_CASE("equality, ordering and hashing are structural") {
  Element a = perm({1, 0, 2});
  Element b = perm({1, 0, 2});
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK_FALSE(a < b);
  CHECK_FALSE(b < a);
  Element c = perm({2, 0, 1});
  CHECK(a != c);
  CHECK(((a < c) || (c < a)));
  // different kinds never compare equal
  Element m = Element::identity_matrix(3, 2);
  CHECK(m != Element::identity_permutation(3));
}

TEST_CASE("ops charges one multiplication per product and inverse") {
  MultCounter mc;
  Ops ops(mc);
  Element a = perm({1, 2, 0});
  Element b = perm({1, 0, 2});
  ops.mul(a, b);
  CHECK(mc.count == 1);
  ops.inv(a);
  CHECK(mc.count == 2);
  mc.reset();
  CHECK(mc.count == 0);
}

TEST_CASE("conjugation cost with and without a held inverse") {
  MultCounter mc;
  Ops ops(mc);
  Element a = perm({1, 2, 0});
  Element b = perm({1, 0, 2});
  Element c = ops.conj(a, b);
  CHECK(c == multiply(multiply(inverse(b), a), b));
  CHECK(mc.count == 3);
  mc.reset();
  Element bi = inverse(b);
  CHECK(ops.conj_given_inverse(bi, a, b) == c);
  CHECK(mc.count == 2);
}

TEST_CASE("power stays within the square-and-multiply budget") {
  Element a = perm({1, 2, 3, 4, 5, 6, 0});  // order 7
  for (int64_t e : {1, 2, 3, 5, 8, 13, 100, 1023}) {
    MultCounter mc;
    Ops ops(mc);
    Element r = ops.pow(a, e);
    Element brute = Element::identity_permutation(7);
    for (int64_t i = 0; i < e % 7; ++i) brute = multiply(brute, a);
    CHECK(r == brute);
    uint64_t bits = 0;
    for (uint64_t v = static_cast<uint64_t>(e); v > 1; v >>= 1) ++bits;
    CHECK(mc.count <= 2 * bits + 1);
  }
  // negative exponent: one extra multiplication for the inversion
  MultCounter mc;
  Ops ops(mc);
  CHECK(ops.pow(a, -3) == inverse(multiply(multiply(a, a), a)));
  CHECK(mc.count <= 2 * 1 + 1 + 1);
  // zero exponent costs nothing
  MultCounter mc0;
  Ops ops0(mc0);
  CHECK(ops0.pow(a, 0).is_identity());
  CHECK(mc0.count == 0);
}

TEST_CASE("order probe answers membership of the order exactly") {
  MultCounter mc;
  Ops ops(mc);
  OrderProbe probe({4, 6});
  // orders 1..6 among permutations of 7 points
  CHECK_FALSE(probe.order_in(Element::identity_permutation(7), ops));
  CHECK_FALSE(probe.order_in(perm({1, 0, 2, 3, 4, 5, 6}), ops));        // order 2
  CHECK_FALSE(probe.order_in(perm({1, 2, 0, 3, 4, 5, 6}), ops));        // order 3
  CHECK(probe.order_in(perm({1, 2, 3, 0, 4, 5, 6}), ops));              // order 4
  CHECK_FALSE(probe.order_in(perm({1, 2, 3, 4, 0, 5, 6}), ops));        // order 5
  CHECK(probe.order_in(perm({1, 0, 3, 4, 2, 5, 6}), ops));              // order 6
  CHECK_FALSE(probe.order_in(perm({1, 2, 3, 4, 5, 6, 0}), ops));        // order 7
  CHECK(probe.order_in(perm({1, 0, 3, 2, 5, 6, 4}), ops));              // (0 1)(2 3)(4 5 6), order 6
  CHECK_FALSE(probe.order_in(perm({1, 0, 3, 2, 4, 5, 6}), ops));        // (0 1)(2 3), order 2
}

TEST_CASE("order probe closure covers maximal proper divisors") {
  OrderProbe probe({12});
  // 12 plus maximal divisors 6 and 4
  CHECK(probe.closure_size() == 3);
  OrderProbe probe2({11});
  // 11 plus maximal divisor 1
  CHECK(probe2.closure_size() == 2);
}

TEST_CASE("group files round-trip through parse and serialize") {
  std::string text =
      "# sample\n"
      "label demo\n"
      "perm 4\n"
      "2 1 3 4\n"
      "1 3 2 4   # trailing comment\n";
  Group g = parse_group(text, "inline");
  CHECK(g.label == "demo");
  REQUIRE(g.generators.size() == 2);
  CHECK(g.generators[0] == perm({1, 0, 2, 3}));
  CHECK(g.generators[1] == perm({0, 2, 1, 3}));
  CHECK(g.identity == Element::identity_permutation(4));
  Group again = parse_group(serialize_group(g), "round");
  CHECK(again.label == g.label);
  CHECK(again.generators == g.generators);
}

TEST_CASE("matrix group files round-trip") {
  std::string text =
      "label lin\n"
      "mat 2 3\n"
      "1 1 0 1\n"
      "0 2 1 0\n";
  Group g = parse_group(text, "inline");
  CHECK(g.generators[0] == Element::matrix(2, 3, {1, 1, 0, 1}));
  CHECK(g.identity == Element::identity_matrix(2, 3));
  Group again = parse_group(serialize_group(g), "round");
  CHECK(again.generators == g.generators);
}

TEST_CASE("element rows parse against a model element") {
  Element model = Element::identity_permutation(4);
  Element got = parse_element_like(model, "2 1 4 3");
  CHECK(got == perm({1, 0, 3, 2}));
  CHECK(parse_element_like(model, element_row(got)) == got);
  Element mm = Element::identity_matrix(2, 5);
  Element m = parse_element_like(mm, "1 2 0 1");
  CHECK(m == Element::matrix(2, 5, {1, 2, 0, 1}));
  CHECK(parse_element_like(mm, element_row(m)) == m);
}

TEST_CASE("label is optional and defaults to empty") {
  Group g = parse_group("perm 3\n1 2 3\n", "x");
  CHECK(g.label.empty());
  CHECK(g.generators.size() == 1);
}

TEST_CASE("malformed group files are rejected") {
  CHECK_THROWS(parse_group("label a\nperm 3\n1 2\n", "x"));     // short row
  CHECK_THROWS(parse_group("label a\nperm 3\n1 2 2\n", "x"));   // not a bijection
  CHECK_THROWS(parse_group("label a\nperm 3\n0 1 2\n", "x"));   // 1-based images
  CHECK_THROWS(parse_group("label a\nmat 2 4\n1 0 0 1\n", "x"));  // composite field
  CHECK_THROWS(parse_group("label a\n", "x"));                  // no generators
}
