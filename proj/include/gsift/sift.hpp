#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gsift/chain.hpp"
#include "gsift/random.hpp"

namespace gsift {

// Trial counts and inner error budgets for one basic sift step. Natural
// logarithms, ceilings as stated; p = 1 degenerates to a single trial.
int64_t random_search_trials(double epsilon, double p, bool deterministic_membership);
double random_search_inner_error(double epsilon, double p);
double coset_reps_inner_error(double epsilon, uint64_t k, uint64_t n);

// Which steps can return Fail on a true member: random search always can,
// coset-reps only when its membership test is randomized, exhaustive never.
bool step_can_fail(const CompiledStep& step);

// zero for infallible steps, the rest of the budget split equally
std::vector<double> split_epsilon(double total, const SiftChain& chain);

// Result of a single basic sift step run on its own: the accepted move y
// (g*y passed the membership test, or matched the stored set), or Fail.
struct BasicSiftOutcome {
  std::optional<Element> y;
  uint64_t trials = 0;
  int index = -1;    // position of the accepted candidate, where one exists
  int pattern = -1;  // pattern reported by the accepting membership test
};

// Up to N draws y from the sampler, accepting the first with g*y a member.
// N and the inner error bound follow random_search_trials and
// random_search_inner_error; a deterministic test is run with bound zero.
BasicSiftOutcome basic_sift_random(const Element& g, double epsilon, const Rational& p,
                                   const TestPtr& test, ProductReplacement& sampler, Ops& ops,
                                   Rng& rng);

// All stored representatives in uniform without-replacement order, accepting
// the first y with g*y a member; n = min_h |hS meet K| sets the inner bound.
BasicSiftOutcome basic_sift_coset_reps(const Element& g, double epsilon,
                                       const std::vector<Element>& reps, uint64_t n,
                                       const TestPtr& test, Ops& ops, Rng& rng);

// Matches g against the stored final subset: against the inverses when the
// identity lies in the set, against the elements themselves otherwise. No
// multiplications; Fail exactly when no stored element works.
BasicSiftOutcome exhaustive_final_step(const Element& g, const std::vector<Element>& stored,
                                       const std::vector<Element>& stored_invs);

struct StepStats {
  uint64_t trials = 0;    // candidates examined during this invocation
  bool accepted = false;  // step ended with an accepted candidate
  bool shortcut = false;  // a pattern shortcut fired after acceptance
  bool skipped = false;   // jumped over by an earlier shortcut
  uint64_t mults = 0;
};

struct SiftResult {
  bool success = false;
  Slp word = Slp::identity(1);  // x with g x = 1, over the generator slots
  bool word_tracked = false;
  uint64_t mults = 0;  // everything this call paid, sampler setup included
  std::vector<StepStats> steps;
};

// Runs a compiled chain: one instance owns the per-step random-element
// generators (created lazily, so their setup cost lands on the first sift
// that needs them) and all random choices, which makes a fixed seed fully
// reproducible. Word tracking can be turned off to keep long benchmark runs
// from accumulating program tape.
class Sifter {
 public:
  Sifter(const SiftChain& chain, double epsilon, uint64_t seed, bool track_words = true);
  Sifter(const SiftChain& chain, std::vector<double> epsilons, uint64_t seed,
         bool track_words = true);

  SiftResult sift(const Element& g);
  SiftResult sift(const Element& g, Ops& ops);  // charge work to the caller's counter

  // pseudo-random ambient group element, charged to the caller's counter
  Element random_element(Ops& ops);
  std::pair<Element, Slp> random_element_with_word(Ops& ops);

  const std::vector<double>& step_epsilons() const { return eps_; }

 private:
  ProductReplacement& step_sampler(size_t step, Ops& ops);

  const SiftChain* chain_;
  std::vector<double> eps_;
  bool track_words_;
  Rng rng_;
  std::vector<uint64_t> sampler_seeds_;
  uint64_t group_seed_ = 0;
  std::vector<std::unique_ptr<ProductReplacement>> samplers_;
  std::unique_ptr<ProductReplacement> group_pr_;
};

}  // namespace gsift
