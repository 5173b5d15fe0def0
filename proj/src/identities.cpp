#include "gsift/identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsift/oracle.hpp"
#include "gsift/random.hpp"
#include "gsift/rational.hpp"

namespace gsift {

namespace {

void claim(IdentityReport& report, const std::string& name, uint64_t expected, uint64_t computed,
           const std::string& counterexample) {
  std::ostringstream line;
  line << "CLAIM " << name << " EXPECTED " << expected << " COMPUTED " << computed << " "
       << (expected == computed ? "PASS" : "FAIL");
  report.lines.push_back(line.str());
  if (expected != computed) {
    report.ok = false;
    report.lines.push_back("  counterexample: " + counterexample);
  }
}

std::vector<uint32_t> random_subset(const std::vector<uint32_t>& pool, Rng& rng,
                                    bool nonempty) {
  std::vector<uint32_t> out;
  for (uint32_t x : pool)
    if (rng.below(2) == 0) out.push_back(x);
  if (nonempty && out.empty()) out.push_back(pool[rng.below(pool.size())]);
  return out;
}

}  // namespace

uint64_t binomial(uint64_t k, uint64_t n) {
  if (n > k) return 0;
  if (n > k - n) n = k - n;
  uint64_t r = 1;
  for (uint64_t i = 1; i <= n; ++i) r = r * (k - n + i) / i;
  return r;
}

IdentityReport verify_identities(uint64_t seed) {
  IdentityReport report;
  Rng rng(seed);

  // modular law on subsets of S5: Z a subgroup, V a union of left Z-cosets
  // (so VZ = V), U arbitrary
  {
    EnumeratedGroup S5 = EnumeratedGroup::enumerate(
        {Element::permutation({1, 0, 2, 3, 4}), Element::permutation({1, 2, 3, 4, 0})});
    std::vector<uint32_t> all = S5.all();
    uint64_t good = 0;
    std::string bad;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<uint32_t> zgens;
      uint64_t ngens = 1 + rng.below(2);
      for (uint64_t i = 0; i < ngens; ++i)
        zgens.push_back(static_cast<uint32_t>(rng.below(S5.order())));
      std::vector<uint32_t> Z = S5.subgroup_closure(zgens);

      std::vector<uint32_t> V;
      uint64_t cosets = 1 + rng.below(6);
      for (uint64_t i = 0; i < cosets; ++i) {
        uint32_t g = static_cast<uint32_t>(rng.below(S5.order()));
        for (uint32_t z : Z) V.push_back(S5.mul(g, z));
      }
      std::sort(V.begin(), V.end());
      V.erase(std::unique(V.begin(), V.end()), V.end());
      if (S5.product_set(V, Z) != V) {
        bad = "coset union is not right-stable under Z (trial " + std::to_string(trial) + ")";
        continue;
      }

      std::vector<uint32_t> U = random_subset(all, rng, true);
      std::vector<uint32_t> lhs = S5.product_set(set_intersect(V, U), Z);
      std::vector<uint32_t> rhs = set_intersect(V, S5.product_set(U, Z));
      if (lhs == rhs) {
        ++good;
      } else if (bad.empty()) {
        bad = "trial " + std::to_string(trial) + ": |Z|=" + std::to_string(Z.size()) +
              " |V|=" + std::to_string(V.size()) + " |U|=" + std::to_string(U.size());
      }
    }
    claim(report, "modular-law-coset-sets", 1000, good, bad);
  }

  // sum_{i=1..k-n} C(k-i, n) = C(k, n+1) for 1 <= n < k <= 30
  {
    uint64_t expected = 0, good = 0;
    std::string bad;
    for (uint64_t k = 2; k <= 30; ++k) {
      for (uint64_t n = 1; n < k; ++n) {
        ++expected;
        uint64_t sum = 0;
        for (uint64_t i = 1; i <= k - n; ++i) sum += binomial(k - i, n);
        if (sum == binomial(k, n + 1)) {
          ++good;
        } else if (bad.empty()) {
          bad = "k=" + std::to_string(k) + " n=" + std::to_string(n) + " sum=" +
                std::to_string(sum) + " C(k,n+1)=" + std::to_string(binomial(k, n + 1));
        }
      }
    }
    claim(report, "first-hit-binomial", expected, good, bad);
  }

  // chain rule over nested events under the uniform measure: the conditional
  // probabilities along A_0 ⊇ A_1 ⊇ ... ⊇ A_m multiply to P(A_m | A_0)
  {
    uint64_t good = 0;
    std::string bad;
    std::vector<uint32_t> omega(60);
    for (uint32_t i = 0; i < 60; ++i) omega[i] = i;
    for (int trial = 0; trial < 300; ++trial) {
      uint64_t depth = 2 + rng.below(4);
      std::vector<std::vector<uint32_t>> events;
      events.push_back(random_subset(omega, rng, true));
      for (uint64_t d = 1; d <= depth; ++d)
        events.push_back(random_subset(events.back(), rng, true));
      Rational stepwise(1);
      for (size_t d = 0; d + 1 < events.size(); ++d)
        stepwise = stepwise * Rational(static_cast<int64_t>(events[d + 1].size()),
                                       static_cast<int64_t>(events[d].size()));
      Rational direct(static_cast<int64_t>(events.back().size()),
                      static_cast<int64_t>(events.front().size()));
      if (stepwise == direct) {
        ++good;
      } else if (bad.empty()) {
        bad = "trial " + std::to_string(trial) + ": stepwise " + stepwise.str() + " direct " +
              direct.str();
      }
    }
    claim(report, "nested-chain-rule", 300, good, bad);
  }

  // ln(1/(1-x)) >= x for x in (0,1), sampled on a grid
  {
    const double grid[] = {0.01, 0.1, 0.5, 0.9};
    uint64_t good = 0;
    std::string bad;
    for (double x : grid) {
      if (std::log(1.0 / (1.0 - x)) >= x) {
        ++good;
      } else if (bad.empty()) {
        bad = "x=" + std::to_string(x);
      }
    }
    claim(report, "log-lower-bound", 4, good, bad);
  }

  return report;
}

}  // namespace gsift
