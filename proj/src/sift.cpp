#include "gsift/sift.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gsift {

int64_t random_search_trials(double epsilon, double p, bool deterministic_membership) {
  if (!(epsilon > 0.0) || epsilon >= 0.5)
    throw std::invalid_argument("step error budget must lie in (0, 1/2)");
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("p must lie in (0, 1]");
  if (p == 1.0) return 1;
  double target = deterministic_membership ? epsilon : epsilon / 2.0;
  return static_cast<int64_t>(std::ceil(std::log(target) / std::log(1.0 - p)));
}

double random_search_inner_error(double epsilon, double p) {
  if (!(epsilon > 0.0) || epsilon >= 0.5)
    throw std::invalid_argument("step error budget must lie in (0, 1/2)");
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("p must lie in (0, 1]");
  if (p == 1.0) return epsilon / 2.0;
  return epsilon * p / (2.0 * (1.0 - p));
}

double coset_reps_inner_error(double epsilon, uint64_t k, uint64_t n) {
  if (n == 0 || n > k) throw std::invalid_argument("need 1 <= n <= k");
  if (epsilon < 0.0 || epsilon >= 0.5)
    throw std::invalid_argument("step error budget must lie in [0, 1/2)");
  if (n == k) return 1.0 / 3.0;
  return std::min(epsilon * static_cast<double>(n + 1) / static_cast<double>(k - n), 1.0 / 3.0);
}

bool step_can_fail(const CompiledStep& step) {
  switch (step.strategy) {
    case Strategy::random_search: return true;
    case Strategy::coset_reps: return !step.test_deterministic;
    case Strategy::exhaustive: return false;
  }
  return false;
}

std::vector<double> split_epsilon(double total, const SiftChain& chain) {
  if (total < 0.0 || total >= 0.5)
    throw std::invalid_argument("total error budget must lie in [0, 1/2)");
  size_t fallible = 0;
  for (const CompiledStep& st : chain.steps)
    if (step_can_fail(st)) ++fallible;
  std::vector<double> eps(chain.steps.size(), 0.0);
  if (fallible == 0) return eps;
  for (size_t i = 0; i < chain.steps.size(); ++i)
    if (step_can_fail(chain.steps[i])) eps[i] = total / static_cast<double>(fallible);
  return eps;
}

BasicSiftOutcome basic_sift_random(const Element& g, double epsilon, const Rational& p,
                                   const TestPtr& test, ProductReplacement& sampler, Ops& ops,
                                   Rng& rng) {
  bool det = test->deterministic();
  double pd = p.to_double();
  double e_inner = det ? 0.0 : random_search_inner_error(epsilon, pd);
  int64_t limit = random_search_trials(epsilon, pd, det);
  BasicSiftOutcome out;
  for (int64_t t = 0; t < limit; ++t) {
    ++out.trials;
    Element y = sampler.next(ops);
    Element cand = ops.mul(g, y);
    TestResult tr = test->test(cand, e_inner, ops, rng);
    if (!tr.member) continue;
    out.y = std::move(y);
    out.pattern = tr.pattern;
    break;
  }
  return out;
}

BasicSiftOutcome basic_sift_coset_reps(const Element& g, double epsilon,
                                       const std::vector<Element>& reps, uint64_t n,
                                       const TestPtr& test, Ops& ops, Rng& rng) {
  uint64_t k = reps.size();
  bool det = test->deterministic();
  double e_inner = det ? 0.0 : coset_reps_inner_error(epsilon, k, n);
  std::vector<uint32_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  for (uint64_t j = k; j > 1; --j) std::swap(order[j - 1], order[rng.below(j)]);
  BasicSiftOutcome out;
  for (uint32_t idx : order) {
    ++out.trials;
    Element cand = ops.mul(g, reps[idx]);
    TestResult tr = test->test(cand, e_inner, ops, rng);
    if (!tr.member) continue;
    out.y = reps[idx];
    out.index = static_cast<int>(idx);
    out.pattern = tr.pattern;
    break;
  }
  return out;
}

BasicSiftOutcome exhaustive_final_step(const Element& g, const std::vector<Element>& stored,
                                       const std::vector<Element>& stored_invs) {
  if (stored.size() != stored_invs.size())
    throw std::invalid_argument("stored elements and their inverses must pair up");
  bool has_identity = false;
  for (const Element& s : stored)
    if (s.is_identity()) has_identity = true;
  BasicSiftOutcome out;
  for (size_t j = 0; j < stored.size(); ++j) {
    ++out.trials;
    if (has_identity ? g != stored_invs[j] : g != stored[j]) continue;
    out.y = has_identity ? stored[j] : stored_invs[j];
    out.index = static_cast<int>(j);
    break;
  }
  return out;
}

Sifter::Sifter(const SiftChain& chain, double epsilon, uint64_t seed, bool track_words)
    : Sifter(chain, split_epsilon(epsilon, chain), seed, track_words) {}

Sifter::Sifter(const SiftChain& chain, std::vector<double> epsilons, uint64_t seed,
               bool track_words)
    : chain_(&chain),
      eps_(std::move(epsilons)),
      track_words_(track_words),
      rng_(0),
      samplers_(chain.steps.size()) {
  if (eps_.size() != chain.steps.size())
    throw std::invalid_argument("need one error budget per step");
  double sum = 0.0;
  for (double e : eps_) {
    if (e < 0.0) throw std::invalid_argument("per-step error budgets must be nonnegative");
    sum += e;
  }
  if (sum >= 0.5) throw std::invalid_argument("error budgets must sum to less than 1/2");
  Rng master(seed);
  rng_ = master.fork(0);
  for (size_t i = 0; i < chain.steps.size(); ++i)
    sampler_seeds_.push_back(master.fork(i + 1).next());
  group_seed_ = master.fork(chain.steps.size() + 1).next();
}

ProductReplacement& Sifter::step_sampler(size_t step, Ops& ops) {
  auto& slot = samplers_[step];
  if (!slot)
    slot = std::make_unique<ProductReplacement>(chain_->steps[step].sampler_gens,
                                                sampler_seeds_[step], ops, 10, 100, track_words_);
  return *slot;
}

Element Sifter::random_element(Ops& ops) {
  if (!group_pr_)
    group_pr_ = std::make_unique<ProductReplacement>(chain_->generators, group_seed_, ops, 10,
                                                     100, track_words_);
  return group_pr_->next(ops);
}

std::pair<Element, Slp> Sifter::random_element_with_word(Ops& ops) {
  Element g = random_element(ops);
  return {g, group_pr_->last_word()};
}

SiftResult Sifter::sift(const Element& g) {
  MultCounter counter;
  Ops ops(counter);
  return sift(g, ops);
}

SiftResult Sifter::sift(const Element& g, Ops& ops) {
  const std::vector<CompiledStep>& steps = chain_->steps;
  SiftResult res;
  res.steps.resize(steps.size());
  res.word_tracked = track_words_;
  uint64_t call_start = ops.counter().count;

  Element cur = g;
  Slp word = Slp::identity(chain_->spec.slots);
  bool failed = false;
  size_t i = 0;

  while (i < steps.size()) {
    const CompiledStep& st = steps[i];
    StepStats& stats = res.steps[i];
    uint64_t step_start = ops.counter().count;
    size_t next = i + 1;
    bool ok = false;

    // applies an accepted move s (already multiplied into cur by the caller)
    // and fires any pattern shortcut
    auto conclude = [&](const Slp& s_word, int pattern) {
      stats.accepted = true;
      ok = true;
      if (track_words_) word = Slp::product(word, s_word);
      for (const CompiledShortcut& sc : st.shortcuts) {
        if (sc.pattern != pattern) continue;
        if (!sc.is_identity) {
          cur = ops.mul(cur, sc.correction);
          if (track_words_) word = Slp::product(word, sc.word);
        }
        stats.shortcut = true;
        next = sc.resume;
        break;
      }
    };

    if (st.strategy == Strategy::exhaustive) {
      bool has_identity = false;
      for (const Element& c : st.candidates)
        if (c.is_identity()) has_identity = true;
      for (size_t j = 0; j < st.candidates.size(); ++j) {
        bool hit = has_identity ? cur == st.candidate_invs[j] : cur == st.candidates[j];
        ++stats.trials;
        if (!hit) continue;
        cur = Element::identity_like(cur);
        conclude(has_identity ? st.candidate_words[j] : Slp::inverse_of(st.candidate_words[j]),
                 -1);
        break;
      }
    } else if (st.strategy == Strategy::coset_reps) {
      uint64_t k = st.candidates.size();
      if (!st.test_deterministic && eps_[i] <= 0.0)
        throw std::runtime_error("step " + std::to_string(i + 1) +
                                 " has a randomized test but no error budget");
      double e_inner =
          st.test_deterministic ? 0.0 : coset_reps_inner_error(eps_[i], k, st.hits);
      std::vector<uint32_t> order(k);
      std::iota(order.begin(), order.end(), 0);
      for (uint64_t j = k; j > 1; --j)
        std::swap(order[j - 1], order[rng_.below(j)]);
      for (uint32_t idx : order) {
        ++stats.trials;
        Element cand = ops.mul(cur, st.candidates[idx]);
        TestResult tr = st.test->test(cand, e_inner, ops, rng_);
        if (!tr.member) continue;
        cur = std::move(cand);
        conclude(st.candidate_words[idx], tr.pattern);
        break;
      }
    } else {
      if (eps_[i] <= 0.0)
        throw std::runtime_error("step " + std::to_string(i + 1) +
                                 " searches randomly and needs a positive error budget");
      double p = st.p.to_double();
      double e_inner =
          st.test_deterministic ? 0.0 : random_search_inner_error(eps_[i], p);
      int64_t trials = random_search_trials(eps_[i], p, st.test_deterministic);
      ProductReplacement& pr = step_sampler(i, ops);
      for (int64_t t = 0; t < trials; ++t) {
        ++stats.trials;
        Element y = pr.next(ops);
        size_t t_idx = 0;
        Element s = y;
        if (!st.translate.empty()) {
          t_idx = rng_.below(st.translate.size());
          s = ops.mul(y, st.translate[t_idx]);
        }
        Element cand = ops.mul(cur, s);
        TestResult tr = st.test->test(cand, e_inner, ops, rng_);
        if (!tr.member) continue;
        cur = std::move(cand);
        if (track_words_) {
          Slp s_word = pr.last_word().bind(st.sampler_gen_words);
          if (!st.translate.empty()) s_word = Slp::product(s_word, st.translate_words[t_idx]);
          conclude(s_word, tr.pattern);
        } else {
          conclude(Slp::identity(chain_->spec.slots), tr.pattern);
        }
        break;
      }
    }

    stats.mults = ops.counter().count - step_start;
    if (!ok) {
      failed = true;
      break;
    }
    for (size_t j = i + 1; j < next; ++j) res.steps[j].skipped = true;
    i = next;
  }

  // the one-sided reading rests on this equality, never on trust in the tests
  if (!failed && cur.is_identity()) {
    res.success = true;
    if (track_words_) res.word = word;
  }
  res.mults = ops.counter().count - call_start;
  return res;
}

}  // namespace gsift
