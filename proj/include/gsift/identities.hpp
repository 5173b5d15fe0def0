#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsift {

struct IdentityReport {
  bool ok = true;
  std::vector<std::string> lines;  // one CLAIM line per family, counterexamples after
};

// Checks the algebraic identities the probabilistic analysis leans on:
// the modular law (V ∩ U)Z = V ∩ (UZ) for coset-closed V, the first-hit
// binomial identity sum_{i=1..k-n} C(k-i, n) = C(k, n+1), the chain rule on
// nested event sets, and ln(1/(1-x)) >= x on a grid. Randomized families use
// the given seed and are deterministic for a fixed seed.
IdentityReport verify_identities(uint64_t seed);

uint64_t binomial(uint64_t k, uint64_t n);

}  // namespace gsift
