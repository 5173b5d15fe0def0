#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gsift/element.hpp"
#include "gsift/ops.hpp"
#include "gsift/slp.hpp"

namespace gsift {

// splitmix64 stream; deterministic and platform independent
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next();
  uint64_t below(uint64_t n);  // uniform on [0, n), rejection sampled
  double unit();               // [0, 1)
  Rng fork(uint64_t salt);     // independent child stream

 private:
  uint64_t state_;
};

// Product replacement with an accumulator ("rattle"). `slots` cells are
// seeded by cycling the generators; construction performs exactly `burn_in`
// cell updates of one multiplication each. A draw is two multiplications:
//   x[i] <- x[i] * x[j]   (i != j both random)
//   r    <- r * x[i]
// and returns r. With track_words the same updates are mirrored on a shared
// SLP tape so any draw can also report a word in the generators.
class ProductReplacement {
 public:
  ProductReplacement(std::vector<Element> generators, uint64_t seed, Ops& ops,
                     uint32_t slots = 10, uint32_t burn_in = 100,
                     bool track_words = false);

  Element next(Ops& ops);
  std::pair<Element, Slp> next_with_word(Ops& ops);
  // word of the element the last next() returned; extraction is deferred so
  // callers can skip it for draws they end up rejecting
  Slp last_word() const;
  uint64_t draws() const { return draws_; }
  size_t tape_size() const { return tape_.size(); }

 private:
  uint32_t step(Ops& ops);  // one cell update; returns the updated cell

  std::vector<Element> cells_;
  std::vector<uint32_t> cell_word_;  // tape index per cell
  Element acc_;
  uint32_t acc_word_ = 0;
  bool acc_seen_ = false;  // accumulator starts as the identity, word-free
  Rng rng_;
  SlpTape tape_;
  bool track_words_;
  uint64_t draws_ = 0;
};

}  // namespace gsift
