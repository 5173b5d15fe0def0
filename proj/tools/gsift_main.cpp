#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gsift/bench.hpp"
#include "gsift/chain.hpp"
#include "gsift/chain_verify.hpp"
#include "gsift/group_io.hpp"
#include "gsift/ops.hpp"
#include "gsift/random.hpp"
#include "gsift/sift.hpp"
#include "gsift/slp.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Args {
  std::string group_path;
  std::string chain_path;
  std::string element_path;
  bool use_random = false;
  double epsilon = 0.01;
  uint64_t seed = 1;
  uint64_t trials = 1000;
  unsigned jobs = 1;
  bool static_only = false;
  uint64_t cap = 10'000'000;
  uint64_t count = 1;
  bool emit_slp = false;
};

int run_sift(const Args& a) {
  gsift::Group group = gsift::load_group(a.group_path);
  gsift::SiftChain chain = gsift::compile_chain(gsift::load_chain_spec(a.chain_path), group);
  if (a.use_random == !a.element_path.empty())
    throw std::runtime_error("give the element as exactly one of --element or --random");

  gsift::MultCounter counter;
  gsift::Ops ops(counter);
  gsift::Sifter sifter(chain, a.epsilon, a.seed);

  gsift::Element g = group.identity;
  if (a.use_random) {
    g = sifter.random_element(ops);
  } else {
    gsift::Slp program = gsift::Slp::from_text(read_file(a.element_path));
    if (program.slots() != group.generators.size())
      throw std::runtime_error("element program has " + std::to_string(program.slots()) +
                               " slots but the group has " +
                               std::to_string(group.generators.size()) + " generators");
    g = program.evaluate(group.generators, ops);
  }

  gsift::SiftResult res = sifter.sift(g, ops);
  if (!res.success) {
    std::cout << "FAIL\n";
    return 1;
  }
  std::cout << res.word.to_text();
  gsift::Element x = res.word.evaluate(group.generators, ops);
  if (!gsift::multiply(g, x).is_identity()) {
    // sift never reports Success without this equality, so reaching here
    // means the word tape itself is broken
    std::cout << "FAIL\n";
    return 1;
  }
  std::cout << "VERIFIED gx=1\n";
  return 0;
}

int run_bench(const Args& a) {
  gsift::Group group = gsift::load_group(a.group_path);
  gsift::SiftChain chain = gsift::compile_chain(gsift::load_chain_spec(a.chain_path), group);
  gsift::BenchReport rep = gsift::run_bench(chain, a.trials, a.epsilon, a.seed, a.jobs);
  std::cout << gsift::bench_report_text(rep);
  return 0;
}

int run_verify(const Args& a) {
  gsift::Group group = gsift::load_group(a.group_path);
  gsift::ChainSpec spec = gsift::load_chain_spec(a.chain_path);
  gsift::VerifyOptions opt;
  opt.oracle = !a.static_only;
  opt.cap = a.cap;
  opt.seed = a.seed;
  gsift::VerifyReport rep = gsift::validate_chain(spec, group, opt);
  std::cout << rep.text();
  return rep.any_fail ? 1 : 0;
}

int run_random(const Args& a) {
  gsift::Group group = gsift::load_group(a.group_path);
  gsift::MultCounter counter;
  gsift::Ops ops(counter);
  gsift::ProductReplacement pr(group.generators, a.seed, ops, 10, 100, a.emit_slp);
  for (uint64_t i = 0; i < a.count; ++i) {
    if (a.emit_slp) {
      auto [element, word] = pr.next_with_word(ops);
      (void)element;
      std::cout << word.to_text();
    } else {
      std::cout << gsift::element_row(pr.next(ops)) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sift elements of black-box groups down subset chains"};
  app.require_subcommand(1);
  Args a;

  CLI::App* sift = app.add_subcommand("sift", "express one element along a chain");
  sift->add_option("--group", a.group_path, "group file")->required();
  sift->add_option("--chain", a.chain_path, "chain file")->required();
  sift->add_option("--element", a.element_path, "element as a straight-line program file");
  sift->add_flag("--random", a.use_random, "sift a pseudo-random element instead");
  sift->add_option("--epsilon", a.epsilon, "failure probability bound (default 0.01)");
  sift->add_option("--seed", a.seed, "random seed");

  CLI::App* bench = app.add_subcommand("bench", "sift many pseudo-random elements and tally cost");
  bench->add_option("--group", a.group_path, "group file")->required();
  bench->add_option("--chain", a.chain_path, "chain file")->required();
  bench->add_option("--trials", a.trials, "number of sifts (default 1000)");
  bench->add_option("--epsilon", a.epsilon, "failure probability bound (default 0.01)");
  bench->add_option("--seed", a.seed, "random seed");
  bench->add_option("--jobs", a.jobs, "worker threads");

  CLI::App* verify = app.add_subcommand("verify-chain", "recompute a chain's declared values");
  verify->add_option("--group", a.group_path, "group file")->required();
  verify->add_option("--chain", a.chain_path, "chain file")->required();
  verify->add_flag("--static", a.static_only, "skip the enumeration; check only cheap claims");
  verify->add_option("--cap", a.cap, "enumeration limit (default 10^7)");
  verify->add_option("--seed", a.seed, "seed for sampled certificates");

  CLI::App* random = app.add_subcommand("random", "emit pseudo-random group elements");
  random->add_option("--group", a.group_path, "group file")->required();
  random->add_option("--count", a.count, "how many elements (default 1)");
  random->add_option("--seed", a.seed, "random seed");
  random->add_flag("--slp", a.emit_slp, "print each element as a straight-line program");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (sift->parsed()) return run_sift(a);
    if (bench->parsed()) return run_bench(a);
    if (verify->parsed()) return run_verify(a);
    if (random->parsed()) return run_random(a);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
