#include "gsift/random.hpp"

#include <stdexcept>

namespace gsift {

namespace {

uint64_t splitmix64(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t Rng::next() { return splitmix64(state_); }

uint64_t Rng::below(uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  uint64_t limit = ~0ull - ~0ull % n;
  uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return r % n;
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rng Rng::fork(uint64_t salt) {
  uint64_t child = next() ^ (salt * 0xd1342543de82ef95ull + 0x632be59bd9b4e019ull);
  return Rng(child);
}

ProductReplacement::ProductReplacement(std::vector<Element> generators, uint64_t seed,
                                       Ops& ops, uint32_t slots, uint32_t burn_in,
                                       bool track_words)
    : rng_(seed),
      tape_(static_cast<uint32_t>(generators.size())),
      track_words_(track_words) {
  if (generators.empty()) throw std::invalid_argument("product replacement needs generators");
  uint32_t n = std::max<uint32_t>(slots, static_cast<uint32_t>(generators.size()));
  cells_.reserve(n);
  cell_word_.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t g = i % generators.size();
    cells_.push_back(generators[g]);
    cell_word_.push_back(g);
  }
  acc_ = Element::identity_like(cells_.front());
  for (uint32_t i = 0; i < burn_in; ++i) step(ops);
}

uint32_t ProductReplacement::step(Ops& ops) {
  uint32_t n = static_cast<uint32_t>(cells_.size());
  uint32_t i = static_cast<uint32_t>(rng_.below(n));
  uint32_t j = static_cast<uint32_t>(rng_.below(n - 1));
  if (j >= i) ++j;
  cells_[i] = ops.mul(cells_[i], cells_[j]);
  if (track_words_) cell_word_[i] = tape_.append_mul(cell_word_[i], cell_word_[j]);
  return i;
}

Element ProductReplacement::next(Ops& ops) {
  uint32_t i = step(ops);
  acc_ = ops.mul(acc_, cells_[i]);
  if (track_words_) {
    acc_word_ = acc_seen_ ? tape_.append_mul(acc_word_, cell_word_[i]) : cell_word_[i];
    acc_seen_ = true;
  }
  ++draws_;
  return acc_;
}

std::pair<Element, Slp> ProductReplacement::next_with_word(Ops& ops) {
  if (!track_words_) throw std::logic_error("word tracking is off for this generator");
  Element g = next(ops);
  return {g, tape_.extract(acc_word_)};
}

Slp ProductReplacement::last_word() const {
  if (!track_words_) throw std::logic_error("word tracking is off for this generator");
  if (!acc_seen_) throw std::logic_error("no draw has happened yet");
  return tape_.extract(acc_word_);
}

}  // namespace gsift
