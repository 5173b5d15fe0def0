#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsift/chain.hpp"

namespace gsift {

struct BenchReport {
  std::string group_label;
  std::string chain_label;
  uint64_t trials = 0;
  double seconds = 0.0;
  uint64_t total_mults = 0;
  double avg_mults = 0.0;  // total_mults / trials; random-element draws included
  uint64_t failures = 0;
  // per step: candidates examined in one invocation -> how often that happened
  std::vector<std::map<uint64_t, uint64_t>> step_trials;
};

// Runs `trials` rounds of draw-a-random-element-then-sift, each round charged
// to a fresh counter (so sampler setup lands on the round that triggered it).
// With jobs > 1 the rounds are sharded across threads, one sifter per worker
// seeded from the master seed; totals do not depend on scheduling order.
BenchReport run_bench(const SiftChain& chain, uint64_t trials, double epsilon, uint64_t seed,
                      unsigned jobs = 1);

// header line, one tab-separated data row, then per-step retry histograms as
// comment lines; zero trials produce the header alone
std::string bench_report_text(const BenchReport& report);

}  // namespace gsift
