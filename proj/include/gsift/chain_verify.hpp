#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsift/chain.hpp"
#include "gsift/group_io.hpp"

namespace gsift {

struct VerifyOptions {
  bool oracle = true;   // enumerate the group and recompute every value claim
  uint64_t cap = 10'000'000;      // enumeration limit; larger groups stay uncertified
  uint64_t seed = 1;              // drives the sampled closure checks
  uint64_t closure_samples = 12;  // overgroup closures tried per order-based test
};

// Transcript of a chain check. Claim lines pair a value the chain declares
// with the value recomputed from an enumeration:
//   CLAIM step-2-p EXPECTED 1/6 COMPUTED 1/6 PASS
// A claim the checker cannot settle is printed with COMPUTED none and the
// verdict UNCERTIFIED; context lines start with "note:". UNCERTIFIED lines
// do not set any_fail.
struct VerifyReport {
  bool any_fail = false;
  std::vector<std::string> lines;

  std::string text() const;
};

// Checks a chain against its group and never passes silently: every declared
// quantity is recomputed, or reported as UNCERTIFIED if it cannot be. Static
// mode (options.oracle = false) skips the enumeration and settles only the
// cheap claims: the chain compiles and the declared element orders hold.
VerifyReport validate_chain(const ChainSpec& spec, const Group& group,
                            const VerifyOptions& options = {});

}  // namespace gsift
