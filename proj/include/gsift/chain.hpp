#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsift/element.hpp"
#include "gsift/group_io.hpp"
#include "gsift/membership.hpp"
#include "gsift/rational.hpp"
#include "gsift/slp.hpp"

namespace gsift {

// How a step finds the element moving the current product into the next
// subset: sampling candidates from a generator of (nearly) uniform elements,
// walking a stored candidate list in random order, or matching the product
// against the final subgroup's full element list.
enum class Strategy : uint8_t { random_search, coset_reps, exhaustive };

// What the oracle can certify about a step. `tsets` marks a step of the
// conjugate-refinement stage (targets of the form C 𝒯 L), `collapse` the step
// that lands in the centralizer itself, `direct` a plain subgroup descent
// whose target is generated by listed elements.
enum class CertKind : uint8_t { none, tsets, collapse, direct };

// One membership check; a step with several test lines accepts an element
// only if every line does. Witnesses are names of chain definitions.
struct TestLine {
  std::string conj;  // wrap the check as x -> inner(conj-name ^ x); empty = off
  std::string kind;  // centralizer | any-centralizer | cyclic-normalizer |
                     // normalizer | stored-set | orders
  std::vector<std::string> witnesses;
  uint64_t order = 0;                // cyclic-normalizer: order of the generator
  std::vector<std::string> members;  // normalizer: every element of the subgroup
  std::vector<uint64_t> orders;      // orders: the decisive order set I
  Rational p0 = Rational(0);         // orders: guaranteed rejection proportion
  std::vector<std::string> kgens;    // orders: generators of the subgroup tested against

  bool operator==(const TestLine&) const = default;
};

// After an accepted candidate whose test reports `pattern`, multiply the
// correction in and continue at step `resume` (1-based over the whole chain).
struct Shortcut {
  int pattern = -1;
  std::string correction;  // definition name, or "identity"
  uint32_t resume = 0;

  bool operator==(const Shortcut&) const = default;
};

struct SamplerSpec {
  enum class Kind : uint8_t { group, subgroup } kind = Kind::group;
  std::vector<std::string> gens;       // subgroup sampler generators
  std::vector<std::string> translate;  // optional right translations of each draw

  bool operator==(const SamplerSpec&) const = default;
};

struct StepSpec {
  Strategy strategy = Strategy::random_search;
  Rational p = Rational(0);             // sifting parameter of the step
  SamplerSpec sampler;                  // random_search only
  std::vector<std::string> candidates;  // coset_reps and exhaustive
  std::vector<TestLine> tests;
  std::vector<Shortcut> shortcuts;
  CertKind cert = CertKind::none;
  std::vector<std::string> subgroup;  // generators of the step's subgroup, for the oracle
  uint64_t tsize = 0;                 // declared |𝒯| at this level; 0 = not declared

  bool operator==(const StepSpec&) const = default;
};

// named element: an operand of the shared tape, with an optional order claim
struct DefSpec {
  std::string name;
  uint32_t operand = 0;
  uint64_t order = 0;  // 0 = no claim

  bool operator==(const DefSpec&) const = default;
};

struct ChainSpec {
  std::string name;
  std::string group_label;
  uint32_t slots = 0;
  std::vector<SlpOp> tape;  // shared instruction pool over the generator slots
  std::vector<DefSpec> defs;
  std::string conjugator;                      // base element name; may be empty
  std::vector<std::vector<uint32_t>> stages;   // step indices, in order
  std::vector<StepSpec> steps;

  bool operator==(const ChainSpec&) const = default;
};

ChainSpec parse_chain_spec(const std::string& text, const std::string& origin);
ChainSpec load_chain_spec(const std::string& path);
std::string serialize_chain_spec(const ChainSpec& spec);
void save_chain_spec(const ChainSpec& spec, const std::string& path);

// ---- compiled form ----

struct CompiledShortcut {
  int pattern = -1;
  Element correction;
  Slp word = Slp::identity(1);  // placeholder; compile always overwrites
  bool is_identity = false;
  uint32_t resume = 0;  // 0-based step index
};

struct CompiledStep {
  Strategy strategy = Strategy::random_search;
  Rational p = Rational(0);
  // random_search
  bool sampler_whole_group = true;
  std::vector<Element> sampler_gens;
  std::vector<Slp> sampler_gen_words;
  std::vector<Element> translate;
  std::vector<Slp> translate_words;
  // coset_reps and exhaustive
  std::vector<Element> candidates;
  std::vector<Element> candidate_invs;
  std::vector<Slp> candidate_words;
  uint64_t hits = 0;  // coset_reps: n = p k, the guaranteed hit count
  // test
  TestPtr test;  // null only for exhaustive steps
  bool test_deterministic = true;
  std::vector<CompiledShortcut> shortcuts;
};

class SiftChain {
 public:
  ChainSpec spec;  // retained verbatim for validation and reporting
  std::vector<Element> generators;
  Element identity;
  std::vector<Element> def_values;             // by def index
  std::vector<Slp> def_words;
  std::map<std::string, size_t> def_index;
  Element conjugator;
  bool has_conjugator = false;
  std::vector<CompiledStep> steps;

  const Element& named(const std::string& name) const;  // resolves "identity" too
  Slp word_of(const std::string& name) const;           // over the generator slots
};

SiftChain compile_chain(const ChainSpec& spec, const Group& group);

}  // namespace gsift
