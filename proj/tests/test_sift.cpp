#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "gsift/chain.hpp"
#include "gsift/element.hpp"
#include "gsift/group_io.hpp"
#include "gsift/membership.hpp"
#include "gsift/ops.hpp"
#include "gsift/oracle.hpp"
#include "gsift/random.hpp"
#include "gsift/sift.hpp"
#include "gsift/slp.hpp"

using namespace gsift;

namespace {

Element perm(std::initializer_list<uint32_t> images) {
  return Element::permutation(std::vector<uint32_t>(images));
}

Group s4_group() {
  Group g;
  g.label = "s4";
  g.generators = {perm({1, 2, 3, 0}), perm({1, 0, 2, 3})};  // 4-cycle, transposition
  g.identity = Element::identity_permutation(4);
  return g;
}

// shared preamble: the Klein four group v1 v2 v3 and a transversal r1..r5
// (plus the identity) of its six cosets, all as words in the two generators
const char* kPreamble =
    "group s4\n"
    "slots 2\n"
    "tape\n"
    "mul 0 0\n"   // 2: (0 2)(1 3)
    "inv 0\n"     // 3
    "mul 3 1\n"   // 4
    "mul 4 0\n"   // 5: (1 2)
    "inv 2\n"     // 6
    "mul 6 1\n"   // 7
    "mul 7 2\n"   // 8: (2 3)
    "mul 1 8\n"   // 9: (0 1)(2 3)
    "mul 9 2\n"   // 10: (0 3)(1 2)
    "mul 1 5\n"   // 11: (0 2 1)
    "mul 5 1\n"   // 12: (0 1 2)
    "mul 11 1\n"  // 13: (0 2)
    "end\n"
    "def v1 9 order 2\n"
    "def v2 2 order 2\n"
    "def v3 10 order 2\n"
    "def r1 1 order 2\n"
    "def r2 13 order 2\n"
    "def r3 5 order 2\n"
    "def r4 12 order 3\n"
    "def r5 11 order 3\n";

SiftChain klein_chain() {
  std::string text = std::string("chain s4-klein\n") + kPreamble +
                     "stage\n"
                     "step\n"
                     "strategy coset-reps\n"
                     "p 1/6\n"
                     "candidates identity r1 r2 r3 r4 r5\n"
                     "test stored-set identity v1 v2 v3\n"
                     "end\n"
                     "stage\n"
                     "step\n"
                     "strategy exhaustive\n"
                     "p 1/4\n"
                     "candidates identity v1 v2 v3\n"
                     "end\n";
  return compile_chain(parse_chain_spec(text, "inline"), s4_group());
}

SiftChain random_chain() {
  std::string text = std::string("chain s4-random\n") + kPreamble +
                     "stage\n"
                     "step\n"
                     "strategy random\n"
                     "p 1/6\n"
                     "sampler group\n"
                     "test stored-set identity v1 v2 v3\n"
                     "end\n"
                     "step\n"
                     "strategy random\n"
                     "p 1/4\n"
                     "sampler subgroup v1 v2\n"
                     "test stored-set identity\n"
                     "end\n"
                     "stage\n"
                     "step\n"
                     "strategy exhaustive\n"
                     "p 1\n"
                     "candidates identity\n"
                     "end\n";
  return compile_chain(parse_chain_spec(text, "inline"), s4_group());
}

SiftChain orders_chain() {
  std::string text = std::string("chain s4-orders\n") + kPreamble +
                     "stage\n"
                     "step\n"
                     "strategy coset-reps\n"
                     "p 1/6\n"
                     "candidates identity r1 r2 r3 r4 r5\n"
                     "test orders 3,4 p0 1/4 kgens v1 v2\n"
                     "end\n"
                     "stage\n"
                     "step\n"
                     "strategy exhaustive\n"
                     "p 1/4\n"
                     "candidates identity v1 v2 v3\n"
                     "end\n";
  return compile_chain(parse_chain_spec(text, "inline"), s4_group());
}

const EnumeratedGroup& s4() {
  static EnumeratedGroup G = EnumeratedGroup::enumerate(s4_group().generators);
  return G;
}

}  // namespace

TEST_CASE("trial counts and inner budgets at the frozen operating points") {
  CHECK(random_search_trials(0.01, 1.0 / 6.0, true) == 26);
  CHECK(random_search_trials(0.01, 1.0 / 6.0, false) == 30);
  CHECK(random_search_inner_error(0.01, 1.0 / 6.0) == doctest::Approx(0.001));
  CHECK(coset_reps_inner_error(0.01, 6, 1) == doctest::Approx(0.004));
  // p = 1 degenerates to one trial with half the budget inside
  CHECK(random_search_trials(0.3, 1.0, false) == 1);
  CHECK(random_search_inner_error(0.3, 1.0) == doctest::Approx(0.15));
  // all representatives guaranteed to hit: constant inner bound
  CHECK(coset_reps_inner_error(0.01, 6, 6) == doctest::Approx(1.0 / 3.0));
  // the inner bound never exceeds 1/3
  CHECK(coset_reps_inner_error(0.4999, 3, 2) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS(random_search_trials(0.6, 0.5, true));
  CHECK_THROWS(random_search_trials(0.01, 0.0, true));
  CHECK_THROWS(random_search_trials(0.01, 1.5, true));
  CHECK_THROWS(coset_reps_inner_error(0.01, 3, 0));
  CHECK_THROWS(coset_reps_inner_error(0.01, 3, 4));
}

TEST_CASE("error budget splits over the fallible steps only") {
  SiftChain det = klein_chain();
  CHECK_FALSE(step_can_fail(det.steps[0]));  // coset-reps, deterministic test
  CHECK_FALSE(step_can_fail(det.steps[1]));  // exhaustive
  CHECK(split_epsilon(0.01, det) == std::vector<double>{0.0, 0.0});

  SiftChain rnd = random_chain();
  CHECK(step_can_fail(rnd.steps[0]));
  CHECK(step_can_fail(rnd.steps[1]));
  CHECK_FALSE(step_can_fail(rnd.steps[2]));
  std::vector<double> eps = split_epsilon(0.02, rnd);
  CHECK(eps[0] == doctest::Approx(0.01));
  CHECK(eps[1] == doctest::Approx(0.01));
  CHECK(eps[2] == 0.0);

  SiftChain ord = orders_chain();
  CHECK(step_can_fail(ord.steps[0]));  // coset-reps with a randomized test
  CHECK(split_epsilon(0.01, ord)[0] == doctest::Approx(0.01));

  CHECK_THROWS(split_epsilon(0.5, det));
  CHECK_THROWS(split_epsilon(-0.1, det));
}

TEST_CASE("deterministic chain sifts every group element with a correct word") {
  SiftChain chain = klein_chain();
  const EnumeratedGroup& G = s4();
  Sifter sifter(chain, 0.01, 42);
  MultCounter mc;
  Ops ops(mc);
  for (uint32_t i = 0; i < G.order(); ++i) {
    SiftResult r = sifter.sift(G.at(i));
    REQUIRE(r.success);
    REQUIRE(r.word_tracked);
    Element x = r.word.evaluate(chain.generators, ops);
    CHECK(multiply(G.at(i), x).is_identity());
    CHECK(r.steps.size() == 2);
    CHECK(r.steps[0].accepted);
    CHECK(r.steps[0].trials <= 6);
    CHECK(r.steps[1].accepted);
    CHECK_FALSE(r.steps[0].skipped);
  }
}

TEST_CASE("same seed reproduces the same sift run exactly") {
  SiftChain chain = random_chain();
  Element g = perm({1, 2, 3, 0});
  Sifter a(chain, 0.02, 7);
  Sifter b(chain, 0.02, 7);
  SiftResult ra = a.sift(g);
  SiftResult rb = b.sift(g);
  CHECK(ra.success == rb.success);
  CHECK(ra.mults == rb.mults);
  CHECK(ra.word.to_text() == rb.word.to_text());
  for (size_t i = 0; i < ra.steps.size(); ++i)
    CHECK(ra.steps[i].trials == rb.steps[i].trials);
}

TEST_CASE("randomized chain never reports a bad success") {
  SiftChain chain = random_chain();
  const EnumeratedGroup& G = s4();
  Sifter sifter(chain, 0.02, 123);
  MultCounter mc;
  Ops ops(mc);
  uint64_t failures = 0;
  const int trials = 300;
  for (int i = 0; i < trials; ++i) {
    Element g = G.at(static_cast<uint32_t>(i % G.order()));
    SiftResult r = sifter.sift(g);
    if (!r.success) {
      ++failures;
      continue;
    }
    Element x = r.word.evaluate(chain.generators, ops);
    REQUIRE(multiply(g, x).is_identity());
  }
  // per-sift failure probability is below 0.02; 300 trials put the count
  // far under 18 with overwhelming probability
  CHECK(failures <= 18);
}

TEST_CASE("randomized membership inside coset representatives stays sound") {
  SiftChain chain = orders_chain();
  const EnumeratedGroup& G = s4();
  Sifter sifter(chain, 0.01, 99);
  MultCounter mc;
  Ops ops(mc);
  uint64_t failures = 0;
  const int trials = 300;
  for (int i = 0; i < trials; ++i) {
    Element g = G.at(static_cast<uint32_t>((i * 7) % G.order()));
    SiftResult r = sifter.sift(g);
    if (!r.success) {
      ++failures;
      continue;
    }
    Element x = r.word.evaluate(chain.generators, ops);
    REQUIRE(multiply(g, x).is_identity());
  }
  // a wrong candidate sneaks past the order test with probability 0.004, so
  // whole-sift failures stay rare
  CHECK(failures <= 15);
}

TEST_CASE("sifting with words disabled still verifies by direct product") {
  SiftChain chain = klein_chain();
  Sifter sifter(chain, 0.01, 5, /*track_words=*/false);
  SiftResult r = sifter.sift(perm({1, 2, 3, 0}));
  CHECK(r.success);
  CHECK_FALSE(r.word_tracked);
}

TEST_CASE("random elements from the sifter come with matching words") {
  SiftChain chain = klein_chain();
  Sifter sifter(chain, 0.01, 21);
  MultCounter mc;
  Ops ops(mc);
  const EnumeratedGroup& G = s4();
  for (int i = 0; i < 20; ++i) {
    auto [g, w] = sifter.random_element_with_word(ops);
    CHECK(G.contains(g));
    CHECK(w.evaluate(chain.generators, ops) == g);
  }
}

TEST_CASE("sifter constructor validates its budgets") {
  SiftChain chain = random_chain();
  CHECK_THROWS(Sifter(chain, 0.5, 1));
  CHECK_THROWS(Sifter(chain, std::vector<double>{0.01}, 1));  // wrong arity
  CHECK_THROWS(Sifter(chain, std::vector<double>{0.3, 0.3, 0.0}, 1));  // sums to 0.6
  // a random step with no budget is rejected when it runs
  Sifter zero(chain, std::vector<double>{0.0, 0.0, 0.0}, 1);
  CHECK_THROWS(zero.sift(perm({1, 2, 3, 0})));
}

TEST_CASE("basic random search accepts only true moves") {
  const EnumeratedGroup& G = s4();
  std::vector<uint32_t> v4idx = G.subgroup_closure(
      {*G.index_of(perm({1, 0, 3, 2})), *G.index_of(perm({2, 3, 0, 1}))});
  TestPtr test = stored_set_test(G.elements_of(v4idx));
  MultCounter mc;
  Ops ops(mc);
  ProductReplacement pr(s4_group().generators, 31, ops);
  Rng rng(17);
  uint64_t failures = 0;
  for (int i = 0; i < 500; ++i) {
    Element g = G.at(static_cast<uint32_t>(i % G.order()));
    BasicSiftOutcome out = basic_sift_random(g, 0.01, Rational(1, 6), test, pr, ops, rng);
    CHECK(out.trials <= 26);
    if (!out.y) {
      ++failures;
      continue;
    }
    CHECK(set_contains(v4idx, *G.index_of(multiply(g, *out.y))));
  }
  // failure chance per call is (5/6)^26, under one percent
  CHECK(failures <= 20);
}

TEST_CASE("coset representatives always find the guaranteed hit") {
  const EnumeratedGroup& G = s4();
  std::vector<uint32_t> v4idx = G.subgroup_closure(
      {*G.index_of(perm({1, 0, 3, 2})), *G.index_of(perm({2, 3, 0, 1}))});
  TestPtr test = stored_set_test(G.elements_of(v4idx));
  std::vector<Element> reps = {Element::identity_permutation(4), perm({1, 0, 2, 3}),
                               perm({2, 1, 0, 3}), perm({0, 2, 1, 3}),
                               perm({1, 2, 0, 3}), perm({2, 0, 1, 3})};
  MultCounter mc;
  Ops ops(mc);
  Rng rng(3);
  std::set<uint64_t> trial_counts;
  for (int round = 0; round < 100; ++round) {
    for (uint32_t i = 0; i < G.order(); ++i) {
      BasicSiftOutcome out = basic_sift_coset_reps(G.at(i), 0.01, reps, 1, test, ops, rng);
      REQUIRE(out.y.has_value());
      CHECK(out.index >= 0);
      CHECK(*out.y == reps[static_cast<size_t>(out.index)]);
      CHECK(set_contains(v4idx, *G.index_of(multiply(G.at(i), *out.y))));
      trial_counts.insert(out.trials);
    }
  }
  // the walk order is shuffled, so the accept position varies
  CHECK(trial_counts.size() >= 4);
}

TEST_CASE("exhaustive matching uses inverses exactly when the identity is stored") {
  Element v1 = perm({1, 0, 3, 2});
  Element r4 = perm({1, 2, 0, 3});   // (0 1 2)
  Element r5 = perm({2, 0, 1, 3});   // (0 2 1), inverse of r4
  Element id = Element::identity_permutation(4);

  // identity present: g is compared against the stored inverses
  std::vector<Element> stored = {id, v1, r4};
  std::vector<Element> invs = {id, v1, r5};
  BasicSiftOutcome hit = exhaustive_final_step(r5, stored, invs);
  REQUIRE(hit.y.has_value());
  CHECK(hit.index == 2);
  CHECK(multiply(r5, *hit.y).is_identity());

  BasicSiftOutcome miss = exhaustive_final_step(perm({1, 0, 2, 3}), stored, invs);
  CHECK_FALSE(miss.y.has_value());

  // identity absent: g is compared against the elements, the move is the inverse
  std::vector<Element> stored2 = {v1, r4};
  std::vector<Element> invs2 = {v1, r5};
  BasicSiftOutcome hit2 = exhaustive_final_step(r4, stored2, invs2);
  REQUIRE(hit2.y.has_value());
  CHECK(*hit2.y == r5);
  CHECK(multiply(r4, *hit2.y).is_identity());

  CHECK_THROWS(exhaustive_final_step(id, stored, invs2));
}

TEST_CASE("sift failure leaves later steps untouched") {
  // sampling from the Klein subgroup can never move a non-member into it,
  // so the first step burns its trials and the sift reports a clean failure
  std::string text = std::string("chain s4-stuck\n") + kPreamble +
                     "stage\n"
                     "step\n"
                     "strategy random\n"
                     "p 1/4\n"
                     "sampler subgroup v1 v2\n"
                     "test stored-set identity v1 v2 v3\n"
                     "end\n"
                     "stage\n"
                     "step\n"
                     "strategy exhaustive\n"
                     "p 1/4\n"
                     "candidates identity v1 v2 v3\n"
                     "end\n";
  SiftChain chain = compile_chain(parse_chain_spec(text, "inline"), s4_group());
  Sifter sifter(chain, 0.01, 2);
  SiftResult r = sifter.sift(perm({1, 0, 2, 3}));  // a transposition
  CHECK_FALSE(r.success);
  CHECK_FALSE(r.steps[0].accepted);
  CHECK(r.steps[0].trials > 0);
  CHECK(r.steps[1].trials == 0);
  // the member case still goes straight through
  CHECK(sifter.sift(perm({1, 0, 3, 2})).success);
}
