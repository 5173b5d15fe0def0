#include "gsift/chain_verify.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsift/oracle.hpp"
#include "gsift/oracle_params.hpp"
#include "gsift/ops.hpp"
#include "gsift/random.hpp"

namespace gsift {

namespace {

class Reporter {
 public:
  explicit Reporter(VerifyReport& report) : report_(report) {}

  void claim(const std::string& name, const std::string& expected, const std::string& computed,
             bool pass) {
    report_.lines.push_back("CLAIM " + name + " EXPECTED " + expected + " COMPUTED " + computed +
                            (pass ? " PASS" : " FAIL"));
    if (!pass) report_.any_fail = true;
  }
  void claim(const std::string& name, const Rational& expected, const Rational& computed) {
    claim(name, expected.str(), computed.str(), expected == computed);
  }
  void uncertified(const std::string& name, const std::string& expected) {
    report_.lines.push_back("CLAIM " + name + " EXPECTED " + expected +
                            " COMPUTED none UNCERTIFIED");
  }
  void note(const std::string& text) { report_.lines.push_back("note: " + text); }

 private:
  VerifyReport& report_;
};

std::string step_name(size_t si, const std::string& what) {
  return "step-" + std::to_string(si + 1) + "-" + what;
}

std::string step_note(size_t si, const std::string& what) {
  return "step " + std::to_string(si + 1) + ": " + what;
}

std::vector<uint32_t> sorted_copy(std::vector<uint32_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::string VerifyReport::text() const {
  std::string out;
  for (const std::string& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

VerifyReport validate_chain(const ChainSpec& spec, const Group& group,
                            const VerifyOptions& options) {
  VerifyReport report;
  Reporter out(report);

  SiftChain chain;
  bool compiled = false;
  std::string compile_msg;
  try {
    chain = compile_chain(spec, group);
    compiled = true;
  } catch (const std::exception& e) {
    compile_msg = e.what();
  }
  out.claim("chain-compiles", "1", compiled ? "1" : "0", compiled);
  if (!compiled) {
    out.note(compile_msg);
    return report;
  }

  for (const DefSpec& d : spec.defs) {
    if (!d.order) continue;
    uint64_t got = element_order(chain.named(d.name));
    out.claim("def-" + d.name + "-order", std::to_string(d.order), std::to_string(got),
              got == d.order);
  }

  if (!options.oracle) {
    out.note("value claims not checked (static mode)");
    for (size_t si = 0; si < spec.steps.size(); ++si)
      out.uncertified(step_name(si, "p"), spec.steps[si].p.str());
    return report;
  }

  std::optional<EnumeratedGroup> enumerated;
  try {
    enumerated = EnumeratedGroup::enumerate(group.generators, options.cap);
  } catch (const std::exception& e) {
    out.note(std::string("enumeration skipped: ") + e.what());
    for (size_t si = 0; si < spec.steps.size(); ++si)
      out.uncertified(step_name(si, "p"), spec.steps[si].p.str());
    return report;
  }
  const EnumeratedGroup& G = *enumerated;

  auto idx = [&](const Element& g) {
    auto found = G.index_of(g);
    if (!found) throw std::logic_error("chain element lies outside the enumerated group");
    return *found;
  };
  auto idx_list = [&](const std::vector<Element>& es) {
    std::vector<uint32_t> v;
    v.reserve(es.size());
    for (const Element& e : es) v.push_back(idx(e));
    return v;  // listed order and multiplicity kept
  };
  auto names_to_idx = [&](const std::vector<std::string>& names) {
    std::vector<uint32_t> v;
    v.reserve(names.size());
    for (const std::string& n : names) v.push_back(idx(chain.named(n)));
    return v;
  };
  auto closure_of_names = [&](const std::vector<std::string>& names) {
    return G.subgroup_closure(names_to_idx(names));
  };

  uint32_t a_idx = G.identity_index();
  if (chain.has_conjugator) a_idx = idx(chain.conjugator);

  // levels of the conjugate-refinement stage, in step order
  std::vector<std::vector<uint32_t>> level_sets;
  bool tsets_declared = false;
  bool tsets_wellformed = true;
  for (size_t si = 0; si < spec.steps.size(); ++si) {
    if (spec.steps[si].cert != CertKind::tsets) continue;
    tsets_declared = true;
    if (spec.steps[si].subgroup.empty()) {
      out.note(step_note(si, "refinement step declares no subgroup generators"));
      tsets_wellformed = false;
    } else {
      level_sets.push_back(closure_of_names(spec.steps[si].subgroup));
    }
  }
  TsetChain T;
  bool tsets_ok = false;
  if (tsets_declared) {
    if (!chain.has_conjugator) {
      out.note("refinement steps need a conjugator definition");
      tsets_wellformed = false;
    }
    if (tsets_wellformed) {
      try {
        T = build_tsets(G, chain.conjugator, level_sets);
        tsets_ok = T.ok;
        if (!T.ok) out.note(T.reason);
      } catch (const std::exception& e) {
        out.note(e.what());
      }
    }
    out.claim("t-sets-build", "1", tsets_ok ? "1" : "0", tsets_ok);
  }

  std::vector<uint32_t> centralizer_set;
  if (chain.has_conjugator) {
    bool collapse_declared = false;
    for (const StepSpec& st : spec.steps)
      if (st.cert == CertKind::collapse) collapse_declared = true;
    if (collapse_declared)
      centralizer_set = tsets_ok ? T.centralizer : G.centralizer(chain.conjugator);
  }

  const std::vector<uint32_t> all = G.all();
  const std::vector<uint32_t> identity_set = {G.identity_index()};

  bool h_known = true;                     // whether the current level set is pinned down
  std::vector<uint32_t> h_prev = all;      // the set the sift has reached before this step
  std::vector<uint32_t> prev_level = all;  // previous refinement subgroup L_{i-1}
  std::vector<uint32_t> tset_prev = identity_set;
  size_t tset_pos = 0;
  std::vector<std::optional<std::vector<uint32_t>>> ksets(spec.steps.size());

  // shortcut checks need the target set of a later step, so they run last
  struct PendingShortcut {
    size_t step = 0;
    int pattern = -1;
    uint32_t correction = 0;
    uint32_t resume = 0;  // 0-based
    bool gold_known = false;
    std::vector<uint32_t> members;  // accepted elements reporting this pattern
  };
  std::vector<PendingShortcut> pending;

  MultCounter scratch;
  Ops ops(scratch);
  Rng scan_rng(options.seed);
  std::optional<std::vector<uint32_t>> class_of_a;
  std::map<std::vector<uint64_t>, Rational> whole_group_profile;  // keyed by the order set

  for (size_t si = 0; si < spec.steps.size(); ++si) {
    const StepSpec& st = spec.steps[si];
    const CompiledStep& cst = chain.steps[si];

    // the step's target subset, where the certificate pins it down
    std::optional<std::vector<uint32_t>> k_new;
    if (st.strategy == Strategy::exhaustive) {
      k_new = identity_set;
    } else if (st.cert == CertKind::tsets) {
      if (tsets_ok) k_new = T.levels[tset_pos].target;
    } else if (st.cert == CertKind::collapse) {
      if (!centralizer_set.empty()) k_new = centralizer_set;
      else out.note(step_note(si, "collapse step needs a conjugator definition"));
    } else if (st.cert == CertKind::direct) {
      if (!st.subgroup.empty()) k_new = closure_of_names(st.subgroup);
      else out.note(step_note(si, "direct step declares no subgroup generators"));
    } else {
      out.note(step_note(si, "no certificate; claims from here on stay uncertified"));
    }

    std::vector<uint32_t> l_samp, t_set, s_cand;
    if (st.strategy == Strategy::random_search) {
      l_samp = cst.sampler_whole_group ? all : G.subgroup_closure(idx_list(cst.sampler_gens));
      t_set = cst.translate.empty() ? identity_set : idx_list(cst.translate);
    } else {
      s_cand = idx_list(cst.candidates);
    }

    if (h_known && k_new) {
      bool have = false;
      Rational computed(0);
      try {
        if (st.strategy == Strategy::random_search)
          computed = sifting_parameter_translated(G, h_prev, *k_new, l_samp, t_set);
        else
          computed = sifting_parameter_over_set(G, h_prev, *k_new, s_cand);
        have = true;
      } catch (const std::exception& e) {
        out.note(step_note(si, e.what()));
      }
      if (have)
        out.claim(step_name(si, "p"), st.p, computed);
      else
        out.uncertified(step_name(si, "p"), st.p.str());
    } else {
      out.uncertified(step_name(si, "p"), st.p.str());
    }

    if (st.cert == CertKind::tsets && tsets_ok) {
      const TsetLevel& level = T.levels[tset_pos];
      const std::vector<uint32_t>& level_set = level_sets[tset_pos];
      if (st.tsize)
        out.claim(step_name(si, "t-set-size"), std::to_string(st.tsize),
                  std::to_string(level.tset.size()), st.tsize == level.tset.size());
      bool contained = set_subset(level_set, prev_level);
      out.claim(step_name(si, "level-contained"), "1", contained ? "1" : "0", contained);

      // the acceptance-ratio route to p applies when the step samples the
      // previous level exactly: the whole of L_{i-1}, or a transversal of
      // the new level inside it
      bool support_is_level = false;
      if (st.strategy == Strategy::random_search)
        support_is_level = cst.translate.empty() && l_samp == prev_level;
      else if (st.strategy == Strategy::coset_reps)
        support_is_level = !s_cand.empty() &&
                           s_cand.size() * level_set.size() == prev_level.size() &&
                           set_subset(sorted_copy(s_cand), prev_level);
      if (support_is_level) {
        bool have = true;
        Rational worst(2);
        try {
          for (uint32_t x : tset_prev)
            worst = std::min(worst, conjugate_orbit_ratio(G, a_idx, x, prev_level, level_set));
        } catch (const std::exception& e) {
          out.note(step_note(si, e.what()));
          have = false;
        }
        if (have) out.claim(step_name(si, "conjugate-ratio"), st.p, worst);
      }
    }

    if (st.cert == CertKind::collapse && k_new) {
      // the declared subgroup must fold into the centralizer: C L = C
      std::vector<uint32_t> fold = *k_new;
      if (!st.subgroup.empty())
        fold = G.product_set(centralizer_set, closure_of_names(st.subgroup));
      bool collapsed = fold == *k_new;
      if (st.tsize)
        out.claim(step_name(si, "t-set-size"), std::to_string(st.tsize), collapsed ? "1" : "0",
                  collapsed && st.tsize == 1);
      else
        out.claim(step_name(si, "collapse"), "1", collapsed ? "1" : "0", collapsed);
    }

    if (st.cert == CertKind::direct && st.strategy == Strategy::coset_reps && h_known && k_new &&
        h_prev.size() <= 4000 && G.is_subgroup(h_prev) &&
        set_subset(sorted_copy(s_cand), h_prev)) {
      // over a whole subgroup the coset count drops to the subgroup form
      Rational bridge = sifting_parameter(G, h_prev, *k_new, h_prev);
      out.claim(step_name(si, "p-over-level"), st.p, bridge);
    }

    // ground truth for the step's test: which elements of the reached set
    // it accepts; must be exactly the target subset
    bool gold_known = false;
    std::map<int, std::vector<uint32_t>> by_pattern;
    if (cst.test && cst.test_deterministic && h_known && k_new) {
      if (h_prev.size() > 5'000'000) {
        out.note(step_note(si, "acceptance set skipped, reached set too large"));
      } else {
        std::vector<uint32_t> gold;
        for (uint32_t z : h_prev) {
          TestResult r = cst.test->test(G.at(z), 0.0, ops, scan_rng);
          if (!r.member) continue;
          gold.push_back(z);
          if (!cst.shortcuts.empty()) by_pattern[r.pattern].push_back(z);
        }
        gold_known = true;
        bool same = gold == *k_new;
        out.claim(step_name(si, "acceptance-set"), "1", same ? "1" : "0", same);
      }
    }

    for (const TestLine& t : st.tests) {
      if (t.kind != "orders") continue;
      bool conj_matches =
          chain.has_conjugator && !t.conj.empty() && chain.named(t.conj) == chain.conjugator;
      if (!conj_matches || !tsets_ok) {
        out.uncertified(step_name(si, "orders-profile"), ">=" + t.p0.str());
        out.note(step_note(si, "order test is certified only inside a conjugate-refinement "
                               "chain, wrapped with its conjugator"));
        continue;
      }
      std::vector<uint32_t> k_sub = closure_of_names(t.kgens);
      uint64_t excluded = 0;
      for (uint32_t z : k_sub)
        if (std::find(t.orders.begin(), t.orders.end(), G.order_of(z)) != t.orders.end())
          ++excluded;
      out.claim(step_name(si, "orders-excluded"), "0", std::to_string(excluded), excluded == 0);

      // every conjugate the test can meet here lies in the previous level
      if (!class_of_a) class_of_a = G.conjugacy_class(a_idx);
      std::vector<uint32_t> pool = set_intersect(*class_of_a, prev_level);
      std::vector<uint32_t> outside;
      for (uint32_t v : pool)
        if (!set_contains(k_sub, v)) outside.push_back(v);
      if (outside.empty()) {
        out.claim(step_name(si, "orders-profile"), ">=" + t.p0.str(), "1", true);
        continue;
      }
      bool sample = outside.size() > options.closure_samples;
      std::vector<uint32_t> picks = outside;
      if (sample) {
        Rng pick_rng(options.seed);
        for (size_t j = 0; j < options.closure_samples; ++j) {
          size_t r = j + static_cast<size_t>(pick_rng.below(picks.size() - j));
          std::swap(picks[j], picks[r]);
        }
        picks.resize(options.closure_samples);
      }
      std::vector<uint32_t> k_gens = names_to_idx(t.kgens);
      Rational worst(1);
      for (uint32_t v : picks) {
        std::vector<uint32_t> gens = k_gens;
        gens.push_back(v);
        std::vector<uint32_t> grown = G.subgroup_closure(gens);
        Rational profile(0);
        if (grown.size() == G.order()) {
          auto it = whole_group_profile.find(t.orders);
          if (it == whole_group_profile.end())
            it = whole_group_profile.emplace(t.orders, element_order_profile(G, grown, t.orders))
                     .first;
          profile = it->second;
        } else {
          profile = element_order_profile(G, grown, t.orders);
        }
        worst = std::min(worst, profile);
      }
      out.claim(step_name(si, sample ? "orders-profile-sampled" : "orders-profile"),
                ">=" + t.p0.str(), worst.str(), worst >= t.p0);
    }

    for (const CompiledShortcut& sc : cst.shortcuts) {
      PendingShortcut ps;
      ps.step = si;
      ps.pattern = sc.pattern;
      ps.correction = idx(sc.correction);
      ps.resume = sc.resume;
      ps.gold_known = gold_known;
      if (gold_known) {
        auto it = by_pattern.find(sc.pattern);
        if (it != by_pattern.end()) ps.members = it->second;
      }
      pending.push_back(std::move(ps));
    }

    ksets[si] = k_new;
    if (k_new)
      h_prev = *k_new;
    else
      h_known = false;
    if (st.cert == CertKind::tsets && tsets_ok) {
      prev_level = level_sets[tset_pos];
      tset_prev = T.levels[tset_pos].tset;
      ++tset_pos;
    } else if (st.cert == CertKind::collapse && !centralizer_set.empty()) {
      prev_level = centralizer_set;
      tset_prev = identity_set;
    } else if (st.cert == CertKind::direct && k_new) {
      prev_level = *k_new;
    }
  }

  for (const PendingShortcut& ps : pending) {
    std::string name =
        "step-" + std::to_string(ps.step + 1) + "-shortcut-p" + std::to_string(ps.pattern);
    if (!ps.gold_known || ps.resume == 0 || !ksets[ps.resume - 1]) {
      out.uncertified(name, "0");
      continue;
    }
    // the corrected element must land in the set reached before the resume step
    const std::vector<uint32_t>& target = *ksets[ps.resume - 1];
    uint64_t violations = 0;
    for (uint32_t z : ps.members)
      if (!set_contains(target, G.mul(z, ps.correction))) ++violations;
    out.claim(name, "0", std::to_string(violations), violations == 0);
  }

  return report;
}

}  // namespace gsift
