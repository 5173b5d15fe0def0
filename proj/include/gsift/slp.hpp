#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsift/element.hpp"
#include "gsift/ops.hpp"

namespace gsift {

// One instruction of a straight-line program. Operands index either an input
// slot (idx < slots) or the result of an earlier instruction (slots + line).
struct SlpOp {
  enum class Kind : uint8_t { mul, inv, pow };
  Kind kind = Kind::mul;
  uint32_t a = 0;
  uint32_t b = 0;  // mul only
  int64_t e = 0;   // pow only

  bool operator==(const SlpOp&) const = default;
};

// A straight-line program over k input slots: a word in the generators with
// shared subexpressions. Text form, one instruction per line:
//   slots=2 result=3
//   MUL 0 1
//   INV 2
// result indexes a slot or an instruction the same way operands do.
class Slp {
 public:
  Slp(uint32_t slots, std::vector<SlpOp> code, uint32_t result);
  static Slp slot(uint32_t slots, uint32_t index);
  static Slp identity(uint32_t slots);

  uint32_t slots() const { return slots_; }
  uint32_t result() const { return result_; }
  const std::vector<SlpOp>& code() const { return code_; }
  size_t length() const { return code_.size(); }

  Element evaluate(const std::vector<Element>& inputs, Ops& ops) const;

  static Slp product(const Slp& x, const Slp& y);
  static Slp inverse_of(const Slp& x);
  static Slp power_of(const Slp& x, int64_t e);
  // composition: replace this program's slots by the given programs (all of
  // which must agree on their own slot count)
  Slp bind(const std::vector<Slp>& slot_programs) const;

  std::string to_text() const;
  static Slp from_text(const std::string& text);

 private:
  uint32_t slots_;
  std::vector<SlpOp> code_;
  uint32_t result_;
};

// Append-only instruction tape shared by many partially overlapping words.
// The product-replacement generator logs one instruction per cell update, and
// extract() pulls any intermediate result out as a standalone program
// containing just the instructions it depends on.
class SlpTape {
 public:
  explicit SlpTape(uint32_t slots) : slots_(slots) {}

  uint32_t slots() const { return slots_; }
  size_t size() const { return code_.size(); }
  uint32_t append_mul(uint32_t a, uint32_t b);
  uint32_t append_inv(uint32_t a);
  uint32_t append_pow(uint32_t a, int64_t e);
  Slp extract(uint32_t index) const;

 private:
  void check_operand(uint32_t idx) const;

  uint32_t slots_;
  std::vector<SlpOp> code_;
};

}  // namespace gsift
