#include "gsift/bench.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "gsift/sift.hpp"

namespace gsift {

namespace {

struct WorkerTotals {
  uint64_t total_mults = 0;
  uint64_t failures = 0;
  std::vector<std::map<uint64_t, uint64_t>> step_trials;
};

void bench_worker(const SiftChain& chain, double epsilon, uint64_t seed, uint64_t rounds,
                  WorkerTotals& out) {
  out.step_trials.resize(chain.steps.size());
  Sifter sifter(chain, epsilon, seed, /*track_words=*/false);
  for (uint64_t t = 0; t < rounds; ++t) {
    MultCounter counter;
    Ops ops(counter);
    Element g = sifter.random_element(ops);
    SiftResult res = sifter.sift(g, ops);
    out.total_mults += counter.count;
    if (!res.success) ++out.failures;
    for (size_t s = 0; s < res.steps.size(); ++s)
      if (!res.steps[s].skipped) ++out.step_trials[s][res.steps[s].trials];
  }
}

}  // namespace

BenchReport run_bench(const SiftChain& chain, uint64_t trials, double epsilon, uint64_t seed,
                      unsigned jobs) {
  BenchReport report;
  report.group_label = chain.spec.group_label;
  report.chain_label = chain.spec.name;
  report.trials = trials;
  report.step_trials.resize(chain.steps.size());
  if (trials == 0) return report;

  if (jobs == 0) jobs = 1;
  if (jobs > trials) jobs = static_cast<unsigned>(trials);

  Rng master(seed);
  std::vector<uint64_t> worker_seeds;
  for (unsigned w = 0; w < jobs; ++w) worker_seeds.push_back(master.fork(w).next());

  std::vector<WorkerTotals> totals(jobs);
  auto start = std::chrono::steady_clock::now();
  if (jobs == 1) {
    bench_worker(chain, epsilon, worker_seeds[0], trials, totals[0]);
  } else {
    std::vector<std::thread> pool;
    uint64_t base = trials / jobs;
    uint64_t extra = trials % jobs;
    for (unsigned w = 0; w < jobs; ++w)
      pool.emplace_back(bench_worker, std::cref(chain), epsilon, worker_seeds[w],
                        base + (w < extra ? 1 : 0), std::ref(totals[w]));
    for (std::thread& th : pool) th.join();
  }
  auto stop = std::chrono::steady_clock::now();
  report.seconds = std::chrono::duration<double>(stop - start).count();

  for (const WorkerTotals& t : totals) {
    report.total_mults += t.total_mults;
    report.failures += t.failures;
    for (size_t s = 0; s < t.step_trials.size(); ++s)
      for (auto [examined, freq] : t.step_trials[s]) report.step_trials[s][examined] += freq;
  }
  report.avg_mults = static_cast<double>(report.total_mults) / static_cast<double>(trials);
  return report;
}

std::string bench_report_text(const BenchReport& report) {
  std::ostringstream out;
  out << "group\tchain\ttrials\tseconds\tavg_mults\tfailures\n";
  if (report.trials == 0) return out.str();
  out << report.group_label << '\t' << report.chain_label << '\t' << report.trials << '\t'
      << std::fixed << std::setprecision(3) << report.seconds << '\t' << std::setprecision(4)
      << report.avg_mults << '\t' << report.failures << '\n';
  for (size_t s = 0; s < report.step_trials.size(); ++s) {
    out << "# step " << (s + 1) << " tries:";
    for (auto [examined, freq] : report.step_trials[s]) out << ' ' << examined << 'x' << freq;
    out << '\n';
  }
  return out.str();
}

}  // namespace gsift
