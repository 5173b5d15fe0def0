#include "gsift/membership.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace gsift {

namespace {

class CentralizerTest : public MembershipTest {
 public:
  explicit CentralizerTest(std::vector<Element> witnesses) : witnesses_(std::move(witnesses)) {
    if (witnesses_.empty()) throw std::invalid_argument("centralizer test needs witnesses");
    for (const Element& w : witnesses_) inverses_.push_back(inverse(w));
  }

  TestResult test(const Element& x, double, Ops& ops, Rng&) const override {
    for (size_t i = 0; i < witnesses_.size(); ++i) {
      // x^w = x iff x and w commute; w^-1 is hoisted, so two multiplications
      if (ops.conj_given_inverse(inverses_[i], x, witnesses_[i]) != x) return {false, -1};
    }
    return {true, 0};
  }
  bool deterministic() const override { return true; }
  std::string describe() const override {
    return "centralizer(" + std::to_string(witnesses_.size()) + " witnesses)";
  }

 private:
  std::vector<Element> witnesses_;
  std::vector<Element> inverses_;
};

class AnyCentralizerTest : public MembershipTest {
 public:
  explicit AnyCentralizerTest(std::vector<Element> witnesses) : witnesses_(std::move(witnesses)) {
    if (witnesses_.empty()) throw std::invalid_argument("centralizer scan needs witnesses");
    for (const Element& w : witnesses_) inverses_.push_back(inverse(w));
  }

  TestResult test(const Element& x, double, Ops& ops, Rng&) const override {
    for (size_t i = 0; i < witnesses_.size(); ++i) {
      if (ops.conj_given_inverse(inverses_[i], x, witnesses_[i]) == x)
        return {true, static_cast<int>(i)};
    }
    return {false, -1};
  }
  bool deterministic() const override { return true; }
  std::string describe() const override {
    return "any-centralizer(" + std::to_string(witnesses_.size()) + " witnesses)";
  }

 private:
  std::vector<Element> witnesses_;
  std::vector<Element> inverses_;
};

class CyclicNormalizerTest : public MembershipTest {
 public:
  CyclicNormalizerTest(const Element& b, uint64_t order) : b_(b) {
    if (order < 2) throw std::invalid_argument("cyclic normalizer of a trivial group");
    Element p = b;
    for (uint64_t k = 1; k < order; ++k) {
      powers_.insert(p);
      p = multiply(p, b);
    }
    if (!p.is_identity()) throw std::invalid_argument("declared order is wrong");
  }

  TestResult test(const Element& x, double, Ops& ops, Rng&) const override {
    Element xi = ops.inv(x);
    Element bx = ops.mul(ops.mul(xi, b_), x);
    return {powers_.count(bx) > 0, 0};
  }
  bool deterministic() const override { return true; }
  std::string describe() const override {
    return "cyclic-normalizer(order " + std::to_string(powers_.size() + 1) + ")";
  }

 private:
  Element b_;
  std::unordered_set<Element, ElementHash> powers_;
};

class StoredSetTest : public MembershipTest {
 public:
  explicit StoredSetTest(std::vector<Element> members) {
    if (members.empty()) throw std::invalid_argument("empty stored set");
    for (Element& m : members) set_.insert(std::move(m));
  }

  TestResult test(const Element& x, double, Ops&, Rng&) const override {
    return {set_.count(x) > 0, 0};
  }
  bool deterministic() const override { return true; }
  std::string describe() const override {
    return "stored-set(" + std::to_string(set_.size()) + ")";
  }

 private:
  std::unordered_set<Element, ElementHash> set_;
};

class NormalizerTest : public MembershipTest {
 public:
  NormalizerTest(std::vector<Element> gens, std::vector<Element> members)
      : gens_(std::move(gens)) {
    if (gens_.empty()) throw std::invalid_argument("normalizer test needs subgroup generators");
    if (members.empty()) throw std::invalid_argument("normalizer test needs the member list");
    for (Element& m : members) set_.insert(std::move(m));
    for (const Element& g : gens_)
      if (set_.count(g) == 0)
        throw std::invalid_argument("normalizer test generator is not in the member list");
  }

  TestResult test(const Element& x, double, Ops& ops, Rng&) const override {
    Element xi = ops.inv(x);
    for (const Element& g : gens_) {
      if (set_.count(ops.conj_given_inverse(xi, g, x)) == 0) return {false, -1};
    }
    return {true, 0};
  }
  bool deterministic() const override { return true; }
  std::string describe() const override {
    return "normalizer(" + std::to_string(gens_.size()) + " gens, " +
           std::to_string(set_.size()) + " members)";
  }

 private:
  std::vector<Element> gens_;
  std::unordered_set<Element, ElementHash> set_;
};

class OrdersTest : public MembershipTest {
 public:
  OrdersTest(std::vector<uint64_t> orders, Rational p0, std::vector<Element> gens)
      : probe_(std::move(orders)), p0_(p0), gens_(std::move(gens)) {
    if (gens_.empty()) throw std::invalid_argument("orders test needs subgroup generators");
    if (!(Rational(0) < p0_) || !(p0_ < Rational(1)))
      throw std::invalid_argument("orders test needs 0 < p0 < 1");
  }

  TestResult test(const Element& x, double e, Ops& ops, Rng& rng) const override {
    if (!(e > 0.0) || e >= 0.5)
      throw std::invalid_argument("orders test needs an error budget 0 < e < 1/2");
    int64_t draws = orders_test_draws(e, p0_.to_double());
    std::vector<Element> gens = gens_;
    gens.push_back(x);
    // a fresh walk over <K, x> per call, paying its own burn-in
    ProductReplacement pr(std::move(gens), rng.next(), ops);
    for (int64_t t = 0; t < draws; ++t) {
      if (probe_.order_in(pr.next(ops), ops)) return {false, -1};
    }
    return {true, 0};
  }
  bool deterministic() const override { return false; }
  std::string describe() const override {
    std::ostringstream out;
    out << "orders{";
    for (size_t i = 0; i < probe_.orders().size(); ++i)
      out << (i ? "," : "") << probe_.orders()[i];
    out << "; p0=" << p0_.str() << "}";
    return out.str();
  }

 private:
  OrderProbe probe_;
  Rational p0_;
  std::vector<Element> gens_;
};

class ConjugatedTest : public MembershipTest {
 public:
  ConjugatedTest(const Element& a, TestPtr inner) : a_(a), inner_(std::move(inner)) {
    if (!inner_) throw std::invalid_argument("conjugated test needs an inner test");
  }

  TestResult test(const Element& x, double e, Ops& ops, Rng& rng) const override {
    Element xi = ops.inv(x);
    Element ax = ops.mul(ops.mul(xi, a_), x);
    return inner_->test(ax, e, ops, rng);
  }
  bool deterministic() const override { return inner_->deterministic(); }
  std::string describe() const override { return "conj(" + inner_->describe() + ")"; }

 private:
  Element a_;
  TestPtr inner_;
};

class AllOfTest : public MembershipTest {
 public:
  explicit AllOfTest(std::vector<TestPtr> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("empty conjunction");
    for (const TestPtr& p : parts_)
      if (!p) throw std::invalid_argument("null test in conjunction");
  }

  TestResult test(const Element& x, double e, Ops& ops, Rng& rng) const override {
    TestResult last;
    for (const TestPtr& p : parts_) {
      last = p->test(x, e, ops, rng);
      if (!last.member) return {false, -1};
    }
    return last;
  }
  bool deterministic() const override {
    for (const TestPtr& p : parts_)
      if (!p->deterministic()) return false;
    return true;
  }
  std::string describe() const override {
    std::string s = "all(";
    for (size_t i = 0; i < parts_.size(); ++i) s += (i ? " & " : "") + parts_[i]->describe();
    return s + ")";
  }

 private:
  std::vector<TestPtr> parts_;
};

}  // namespace

TestPtr centralizer_test(std::vector<Element> witnesses) {
  return std::make_shared<CentralizerTest>(std::move(witnesses));
}

TestPtr any_centralizer_test(std::vector<Element> witnesses) {
  return std::make_shared<AnyCentralizerTest>(std::move(witnesses));
}

TestPtr cyclic_normalizer_test(const Element& b, uint64_t order) {
  return std::make_shared<CyclicNormalizerTest>(b, order);
}

TestPtr stored_set_test(std::vector<Element> members) {
  return std::make_shared<StoredSetTest>(std::move(members));
}

TestPtr normalizer_test(std::vector<Element> gens, std::vector<Element> members) {
  return std::make_shared<NormalizerTest>(std::move(gens), std::move(members));
}

TestPtr orders_test(std::vector<uint64_t> orders, Rational p0, std::vector<Element> subgroup_gens) {
  return std::make_shared<OrdersTest>(std::move(orders), p0, std::move(subgroup_gens));
}

TestPtr conjugated_test(const Element& a, TestPtr inner) {
  return std::make_shared<ConjugatedTest>(a, std::move(inner));
}

TestPtr all_of(std::vector<TestPtr> parts) {
  if (parts.size() == 1) return parts.front();
  return std::make_shared<AllOfTest>(std::move(parts));
}

int64_t orders_test_draws(double e, double p0) {
  if (!(e > 0.0) || e >= 1.0 || !(p0 > 0.0) || p0 >= 1.0)
    throw std::invalid_argument("orders_test_draws needs 0 < e < 1 and 0 < p0 < 1");
  return static_cast<int64_t>(std::ceil(std::log(e) / std::log1p(-p0) - 1e-9));
}

}  // namespace gsift
