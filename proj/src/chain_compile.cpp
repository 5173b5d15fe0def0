#include <stdexcept>

#include "gsift/chain.hpp"

namespace gsift {

namespace {

[[noreturn]] void step_error(size_t step, const std::string& msg) {
  throw std::runtime_error("step " + std::to_string(step + 1) + ": " + msg);
}

}  // namespace

const Element& SiftChain::named(const std::string& name) const {
  if (name == "identity") return identity;
  auto it = def_index.find(name);
  if (it == def_index.end()) throw std::runtime_error("unknown chain name: " + name);
  return def_values[it->second];
}

Slp SiftChain::word_of(const std::string& name) const {
  if (name == "identity") return Slp::identity(spec.slots);
  auto it = def_index.find(name);
  if (it == def_index.end()) throw std::runtime_error("unknown chain name: " + name);
  return def_words[it->second];
}

SiftChain compile_chain(const ChainSpec& spec, const Group& group) {
  if (group.generators.size() != spec.slots)
    throw std::runtime_error("chain wants " + std::to_string(spec.slots) + " generator slots but the group has " +
                             std::to_string(group.generators.size()) + " generators");

  SiftChain chain;
  chain.spec = spec;
  chain.generators = group.generators;
  chain.identity = group.identity;

  // evaluate the shared tape once; compile-time work is not charged to sifts
  MultCounter scratch;
  Ops ops(scratch);
  std::vector<Element> values = group.generators;
  SlpTape tape(spec.slots);
  for (const SlpOp& op : spec.tape) {
    switch (op.kind) {
      case SlpOp::Kind::mul:
        values.push_back(ops.mul(values[op.a], values[op.b]));
        tape.append_mul(op.a, op.b);
        break;
      case SlpOp::Kind::inv:
        values.push_back(ops.inv(values[op.a]));
        tape.append_inv(op.a);
        break;
      case SlpOp::Kind::pow:
        values.push_back(ops.pow(values[op.a], op.e));
        tape.append_pow(op.a, op.e);
        break;
    }
  }

  auto word_for_operand = [&](uint32_t operand) {
    return operand < spec.slots ? Slp::slot(spec.slots, operand) : tape.extract(operand);
  };

  for (const DefSpec& d : spec.defs) {
    chain.def_index[d.name] = chain.def_values.size();
    chain.def_values.push_back(values[d.operand]);
    chain.def_words.push_back(word_for_operand(d.operand));
  }

  if (!spec.conjugator.empty()) {
    chain.conjugator = chain.named(spec.conjugator);
    chain.has_conjugator = true;
  }

  // order claims are cheap to check and catch mistranscribed tapes early
  for (const DefSpec& d : spec.defs) {
    if (!d.order) continue;
    uint64_t got = element_order(chain.named(d.name));
    if (got != d.order)
      throw std::runtime_error("definition '" + d.name + "' claims order " + std::to_string(d.order) +
                               " but evaluates to an element of order " + std::to_string(got));
  }

  for (size_t si = 0; si < spec.steps.size(); ++si) {
    const StepSpec& st = spec.steps[si];
    CompiledStep out;
    out.strategy = st.strategy;
    out.p = st.p;

    if (st.strategy == Strategy::random_search) {
      out.sampler_whole_group = st.sampler.kind == SamplerSpec::Kind::group;
      if (out.sampler_whole_group) {
        out.sampler_gens = group.generators;
        for (uint32_t i = 0; i < spec.slots; ++i)
          out.sampler_gen_words.push_back(Slp::slot(spec.slots, i));
      } else {
        for (const std::string& n : st.sampler.gens) {
          out.sampler_gens.push_back(chain.named(n));
          out.sampler_gen_words.push_back(chain.word_of(n));
        }
      }
      for (const std::string& n : st.sampler.translate) {
        out.translate.push_back(chain.named(n));
        out.translate_words.push_back(chain.word_of(n));
      }
    } else {
      for (const std::string& n : st.candidates) {
        const Element& c = chain.named(n);
        out.candidates.push_back(c);
        out.candidate_invs.push_back(inverse(c));
        out.candidate_words.push_back(chain.word_of(n));
      }
      uint64_t k = out.candidates.size();
      if (st.strategy == Strategy::coset_reps) {
        // the guaranteed hit count n with p = n/k must be a whole number
        if ((st.p * Rational(static_cast<int64_t>(k))).den() != 1)
          step_error(si, "p = " + st.p.str() + " over " + std::to_string(k) +
                             " candidates gives a fractional hit count");
        out.hits = static_cast<uint64_t>((st.p * Rational(static_cast<int64_t>(k))).num());
        if (out.hits == 0 || out.hits > k) step_error(si, "hit count out of range");
      } else {
        if (st.p != Rational(1, static_cast<int64_t>(k)))
          step_error(si, "exhaustive step over " + std::to_string(k) +
                             " stored elements must declare p = 1/" + std::to_string(k));
      }
    }

    std::vector<TestPtr> parts;
    for (const TestLine& t : st.tests) {
      std::vector<Element> witnesses;
      for (const std::string& n : t.witnesses) witnesses.push_back(chain.named(n));
      TestPtr part;
      try {
        if (t.kind == "centralizer") {
          part = centralizer_test(std::move(witnesses));
        } else if (t.kind == "any-centralizer") {
          part = any_centralizer_test(std::move(witnesses));
        } else if (t.kind == "cyclic-normalizer") {
          uint64_t got = element_order(witnesses[0]);
          if (got != t.order)
            throw std::invalid_argument("cyclic-normalizer generator '" + t.witnesses[0] +
                                        "' has order " + std::to_string(got) + ", not " +
                                        std::to_string(t.order));
          part = cyclic_normalizer_test(witnesses[0], t.order);
        } else if (t.kind == "stored-set") {
          part = stored_set_test(std::move(witnesses));
        } else if (t.kind == "normalizer") {
          std::vector<Element> members;
          for (const std::string& n : t.members) members.push_back(chain.named(n));
          part = normalizer_test(std::move(witnesses), std::move(members));
        } else if (t.kind == "orders") {
          std::vector<Element> kgens;
          for (const std::string& n : t.kgens) kgens.push_back(chain.named(n));
          part = orders_test(t.orders, t.p0, std::move(kgens));
        }
      } catch (const std::exception& e) {
        step_error(si, e.what());
      }
      if (!t.conj.empty()) part = conjugated_test(chain.named(t.conj), part);
      parts.push_back(std::move(part));
    }
    if (parts.size() == 1) {
      out.test = parts[0];
    } else if (parts.size() > 1) {
      out.test = all_of(std::move(parts));
    }
    out.test_deterministic = !out.test || out.test->deterministic();

    for (const Shortcut& s : st.shortcuts) {
      CompiledShortcut cs;
      cs.pattern = s.pattern;
      cs.is_identity = s.correction == "identity";
      cs.correction = chain.named(s.correction);
      cs.word = chain.word_of(s.correction);
      cs.resume = s.resume - 1;
      if (cs.resume <= si)
        step_error(si, "shortcut must resume at a later step, not step " + std::to_string(s.resume));
      out.shortcuts.push_back(std::move(cs));
    }

    chain.steps.push_back(std::move(out));
  }

  return chain;
}

}  // namespace gsift
