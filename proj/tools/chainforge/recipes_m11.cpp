// Chain recipes for the order-7920 Mathieu group on 11 points.
//
// Two chains are built: one sifting through the centralizer of an
// involution (descending 48 > 4 > 1 inside the centralizer after two
// conjugate-refinement steps), one through the normalizer tower of an
// order-11 cyclic subgroup. Every declared parameter is recomputed here
// with the same oracle routines verify-chain runs, and the well-known
// values are hard-required so a bad group file cannot silently produce
// a different chain.

#include <cstdint>
#include <vector>

#include "forge.hpp"
#include "gsift/oracle_params.hpp"
#include "gsift/rational.hpp"

namespace chainforge {

using gsift::CertKind;
using gsift::ChainSpec;
using gsift::EnumeratedGroup;
using gsift::Rational;
using gsift::SamplerSpec;
using gsift::StepSpec;
using gsift::Strategy;
using gsift::TestLine;
using gsift::TsetChain;

namespace {

TestLine conj_test(const std::string& conj, const std::string& kind,
                   std::vector<std::string> witnesses) {
  TestLine t;
  t.conj = conj;
  t.kind = kind;
  t.witnesses = std::move(witnesses);
  return t;
}

}  // namespace

ChainSpec forge_m11_involution(const EnumeratedGroup& G) {
  require(G.order() == 7920, "m11-involution: group must have order 7920");

  // a: an involution (there is a single class, 165 strong); its
  // centralizer C has order 48 and is the first stage's endpoint
  uint32_t a = class_element(G, 2, 165);
  std::vector<uint32_t> C = G.centralizer(G.at(a));
  require(C.size() == 48, "m11-involution: |C(a)| must be 48");

  // b: a non-central involution of C whose centralizer inside C is the
  // four-group {1, a, b, ab}; that four-group is the second level
  uint32_t b = UINT32_MAX;
  std::vector<uint32_t> V;
  for (uint32_t x : C) {
    if (x == a || G.order_of(x) != 2) continue;
    std::vector<uint32_t> cand = G.centralizer_in(C, G.at(x));
    if (cand.size() == 4) {
      b = x;
      V = std::move(cand);
      break;
    }
  }
  require(b != UINT32_MAX, "m11-involution: no involution of C with |C_C(b)| = 4");
  require(gsift::set_contains(V, a), "m11-involution: four-group must contain a");

  // c: an order-8 element of C with c^4 = a; the second stage descends
  // C > <c> > 1, and <c> is its own centralizer in C, so the order-8
  // commutation test recognizes exactly <c>
  uint32_t c = UINT32_MAX;
  for (uint32_t x : C) {
    if (G.order_of(x) != 8) continue;
    uint32_t x2 = G.mul(x, x);
    if (G.mul(x2, x2) == a) {
      c = x;
      break;
    }
  }
  require(c != UINT32_MAX, "m11-involution: no order-8 element of C powering to a");
  std::vector<uint32_t> Lc = G.cyclic_subgroup(c);
  require(G.centralizer_in(C, G.at(c)) == Lc,
          "m11-involution: <c> must be self-centralizing in C");

  // refinement data for the conjugate stage G > C > V
  TsetChain T = build_tsets(G, G.at(a), {C, V});
  require(T.ok, "m11-involution: refinement construction failed: " + T.reason);
  require(T.levels[0].tset.size() == 2 && T.levels[1].tset.size() == 3,
          "m11-involution: refinement sets must have sizes 2 and 3");
  require(T.centralizer == C, "m11-involution: refinement centralizer mismatch");
  const std::vector<uint32_t>& K1 = T.levels[0].target;
  const std::vector<uint32_t>& K2 = T.levels[1].target;

  const std::vector<uint32_t> all = G.all();
  const std::vector<uint32_t> id_set = {G.identity_index()};

  Rational p1 = sifting_parameter_translated(G, all, K1, all, id_set);
  require(p1 == Rational(13, 165), "m11-involution: step 1 parameter is " + p1.str());

  std::vector<uint32_t> reps2 = left_transversal(G, C, V);  // 12 cosets
  Rational p2 = sifting_parameter_over_set(G, K1, K2, reps2);
  require(p2 == Rational(1, 6), "m11-involution: step 2 parameter is " + p2.str());

  // collapse candidates: the inverses of the level-2 refinement set; the
  // four-group is abelian, so each accepted residue matches exactly one
  std::vector<uint32_t> tinv = G.inverse_set(T.levels[1].tset);
  Rational p3 = sifting_parameter_over_set(G, K2, C, tinv);
  require(p3 == Rational(1, 3), "m11-involution: step 3 parameter is " + p3.str());

  std::vector<uint32_t> reps4 = left_transversal(G, C, Lc);  // 6 cosets
  Rational p4 = sifting_parameter_over_set(G, C, Lc, reps4);
  require(p4 == Rational(1, 6), "m11-involution: step 4 parameter is " + p4.str());

  std::vector<uint32_t> cgens = generating_set(G, C);

  Forge f(G, "m11-involution", "m11");
  std::string an = f.def("a", a);
  std::string bn = f.def("b", b);
  std::string cn = f.def("c", c);
  f.conjugator(an);
  std::vector<std::string> cg = f.def_list("cg", cgens);
  std::vector<std::string> r2 = f.def_list("r", reps2);
  std::vector<std::string> w3 = f.def_list("w", tinv);
  std::vector<std::string> s4 = f.def_list("s", reps4);
  std::vector<std::string> e5 = f.def_list("f", Lc);

  f.begin_stage();
  {
    StepSpec& s = f.step();
    s.strategy = Strategy::random_search;
    s.p = p1;
    s.sampler.kind = SamplerSpec::Kind::group;
    s.tests = {conj_test(an, "centralizer", {an})};
    s.cert = CertKind::tsets;
    s.subgroup = cg;
    s.tsize = 2;
  }
  {
    StepSpec& s = f.step();
    s.strategy = Strategy::coset_reps;
    s.p = p2;
    s.candidates = r2;
    s.tests = {conj_test(an, "centralizer", {bn})};
    s.cert = CertKind::tsets;
    s.subgroup = {an, bn};
    s.tsize = 3;
  }
  {
    StepSpec& s = f.step();
    s.strategy = Strategy::coset_reps;
    s.p = p3;
    s.candidates = w3;
    s.tests = {conj_test(an, "stored-set", {an})};
    s.cert = CertKind::collapse;
    s.tsize = 1;
  }
  f.begin_stage();
  {
    StepSpec& s = f.step();
    s.strategy = Strategy::coset_reps;
    s.p = p4;
    s.candidates = s4;
    s.tests = {conj_test("", "centralizer", {cn})};
    s.cert = CertKind::direct;
    s.subgroup = {cn};
  }
  {
    StepSpec& s = f.step();
    s.strategy = Strategy::exhaustive;
    s.p = Rational(1, static_cast<int64_t>(Lc.size()));
    s.candidates = e5;
  }
  return f.take();
}

ChainSpec forge_m11_eleven(const EnumeratedGroup& G) {
  require(G.order() == 7920, "m11-eleven: group must have order 7920");

  // a: an order-11 element; <a> is a full Sylow subgroup, self-centralizing,
  // with normalizer N of order 55
  uint32_t a = class_element(G, 11, 720);
  std::vector<uint32_t> A = G.cyclic_subgroup(a);
  require(G.centralizer(G.at(a)) == A, "m11-eleven: <a> must be self-centralizing");
  const std::vector<uint32_t> all = G.all();
  std::vector<uint32_t> N = G.normalizer_in(all, A);
  require(N.size() == 55, "m11-eleven: |N(<a>)| must be 55");
  std::vector<uint32_t> ngens = generating_set(G, N);

  // L1: the unique subgroup of order 660 above N, found by closing N with
  // one scanned element (most attempts close to the whole group, which is
  // cheap to detect)
  std::vector<uint32_t> L1;
  for (uint32_t y = 0; y < G.order(); ++y) {
    if (gsift::set_contains(N, y)) continue;
    std::vector<uint32_t> gens = ngens;
    gens.push_back(y);
    std::vector<uint32_t> closed = G.subgroup_closure(gens);
    if (closed.size() == 660) {
      L1 = std::move(closed);
      break;
    }
  }
  require(L1.size() == 660, "m11-eleven: no order-660 overgroup of N found");
  std::vector<uint32_t> lgens = generating_set(G, L1);

  // ap: a conjugate of a inside L1 generating a different Sylow subgroup;
  // zc: a witness with ap^zc = a. Conjugating ap by the powers of a walks
  // through generators of all eleven other Sylow subgroups of L1.
  std::vector<uint32_t> cls = G.conjugacy_class_in(L1, a);
  uint32_t ap = UINT32_MAX;
  for (uint32_t x : cls) {
    if (!gsift::set_contains(A, x)) {
      ap = x;
      break;
    }
  }
  require(ap != UINT32_MAX, "m11-eleven: class of a inside L1 stays in <a>");
  uint32_t zc = UINT32_MAX;
  for (uint32_t l : L1) {
    if (G.conj(ap, l) == a) {
      zc = l;
      break;
    }
  }
  require(zc != UINT32_MAX, "m11-eleven: no witness conjugating ap to a");

  // witnesses w_j, one per Sylow subgroup of L1: w_0 = a, w_{j+1} = ap^(a^j)
  std::vector<uint32_t> wits = {a};
  std::vector<std::vector<uint32_t>> sylows = {A};
  uint32_t apow = G.identity_index();
  for (int j = 0; j < 11; ++j) {
    uint32_t w = G.conj(ap, apow);
    require(G.order_of(w) == 11, "m11-eleven: witness must have order 11");
    std::vector<uint32_t> P = G.cyclic_subgroup(w);
    require(gsift::set_subset(P, L1), "m11-eleven: witness subgroup must lie in L1");
    for (const std::vector<uint32_t>& Q : sylows)
      require(Q != P, "m11-eleven: witness Sylow subgroups must be distinct");
    require(G.centralizer(G.at(w)) == P, "m11-eleven: witness must be self-centralizing");
    wits.push_back(w);
    sylows.push_back(std::move(P));
    apow = G.mul(apow, a);
  }

  // refinement data for G > L1 > N; both targets coincide with the
  // subgroups themselves, which the shortcut corrections below rely on
  TsetChain T = build_tsets(G, G.at(a), {L1, N});
  require(T.ok, "m11-eleven: refinement construction failed: " + T.reason);
  require(T.levels[0].tset.size() == 1 && T.levels[1].tset.size() == 1,
          "m11-eleven: refinement sets must both be trivial");
  require(T.centralizer == A, "m11-eleven: refinement centralizer mismatch");
  require(T.levels[0].target == L1, "m11-eleven: step 1 target must equal L1");
  require(T.levels[1].target == N, "m11-eleven: step 2 target must equal N");

  std::vector<uint32_t> reps1 = left_transversal(G, all, L1);  // 12 cosets
  Rational p1 = sifting_parameter_over_set(G, all, L1, reps1);
  require(p1 == Rational(1, 12), "m11-eleven: step 1 parameter is " + p1.str());
  std::vector<uint32_t> reps2 = left_transversal(G, L1, N);  // 12 cosets
  Rational p2 = sifting_parameter_over_set(G, L1, N, reps2);
  require(p2 == Rational(1, 12), "m11-eleven: step 2 parameter is " + p2.str());
  std::vector<uint32_t> reps3 = left_transversal(G, N, A);  // 5 cosets
  Rational p3 = sifting_parameter_over_set(G, N, A, reps3);
  require(p3 == Rational(1, 5), "m11-eleven: step 3 parameter is " + p3.str());

  // corrections: a residue whose conjugate landed in Sylow subgroup j can
  // skip straight to the collapse step after multiplying by a^{-(j-1)} zc
  // (pattern 0 already sits inside N and needs no correction)
  std::vector<uint32_t> corr = {G.identity_index()};
  apow = G.identity_index();
  for (int j = 0; j < 11; ++j) {
    corr.push_back(G.mul(G.inv(apow), zc));
    apow = G.mul(apow, a);
  }
  for (uint32_t z : L1) {
    uint32_t az = G.conj(a, z);
    size_t jz = sylows.size();
    for (size_t j = 0; j < sylows.size(); ++j) {
      if (gsift::set_contains(sylows[j], az)) {
        jz = j;
        break;
      }
    }
    require(jz < sylows.size(), "m11-eleven: conjugate escapes the Sylow subgroups of L1");
    require(gsift::set_contains(N, G.mul(z, corr[jz])),
            "m11-eleven: shortcut correction fails to reach N");
  }

  Forge f(G, "m11-eleven", "m11");
  std::string an = f.def("a", a);
  f.conjugator(an);
  std::vector<std::string> lg = f.def_list("lg", lgens);
  std::vector<std::string> ng = f.def_list("ng", ngens);
  std::vector<std::string> wn = f.def_list("w", wits);
  std::vector<std::string> cn = f.def_list("c", corr);
  std::vector<std::string> s1 = f.def_list("s", reps1);
  std::vector<std::string> r2 = f.def_list("r", reps2);
  std::vector<std::string> u3 = f.def_list("u", reps3);
  std::vector<std::string> e4 = f.def_list("q", A);

  f.begin_stage();
  {
    StepSpec& s = f.step();
    s.strategy = Strategy::coset_reps;
    s.p = p1;
    s.candidates = s1;
    s.tests = {conj_test(an, "any-centralizer", wn)};
    for (int j = 0; j < 12; ++j)
      s.shortcuts.push_back({j, cn[static_cast<size_t>(j)], 3});
    s.cert = CertKind::tsets;
    s.subgroup = lg;
    s.tsize = 1;
  }
  {
    StepSpec& s = f.step();
    s.strategy = Strategy::coset_reps;
    s.p = p2;
    s.candidates = r2;
    s.tests = {conj_test(an, "cyclic-normalizer", {an})};
    s.tests[0].order = 11;
    s.cert = CertKind::tsets;
    s.subgroup = ng;
    s.tsize = 1;
  }
  {
    StepSpec& s = f.step();
    s.strategy = Strategy::coset_reps;
    s.p = p3;
    s.candidates = u3;
    s.tests = {conj_test(an, "stored-set", {an})};
    s.cert = CertKind::collapse;
    s.tsize = 1;
  }
  f.begin_stage();
  {
    StepSpec& s = f.step();
    s.strategy = Strategy::exhaustive;
    s.p = Rational(1, static_cast<int64_t>(A.size()));
    s.candidates = e4;
  }
  return f.take();
}

}  // namespace chainforge
