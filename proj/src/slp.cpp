#include "gsift/slp.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gsift {

namespace {

void validate_code(uint32_t slots, const std::vector<SlpOp>& code, uint32_t result) {
  for (size_t i = 0; i < code.size(); ++i) {
    uint32_t limit = slots + static_cast<uint32_t>(i);
    const SlpOp& op = code[i];
    if (op.a >= limit) throw std::invalid_argument("slp operand references a later line");
    if (op.kind == SlpOp::Kind::mul && op.b >= limit)
      throw std::invalid_argument("slp operand references a later line");
  }
  if (result >= slots + code.size()) throw std::invalid_argument("slp result out of range");
}

}  // namespace

Slp::Slp(uint32_t slots, std::vector<SlpOp> code, uint32_t result)
    : slots_(slots), code_(std::move(code)), result_(result) {
  if (slots_ == 0) throw std::invalid_argument("slp needs at least one slot");
  validate_code(slots_, code_, result_);
}

Slp Slp::slot(uint32_t slots, uint32_t index) {
  if (index >= slots) throw std::invalid_argument("slot index out of range");
  return Slp(slots, {}, index);
}

Slp Slp::identity(uint32_t slots) {
  std::vector<SlpOp> code;
  code.push_back({SlpOp::Kind::pow, 0, 0, 0});
  return Slp(slots, std::move(code), slots);
}

Element Slp::evaluate(const std::vector<Element>& inputs, Ops& ops) const {
  if (inputs.size() != slots_) throw std::invalid_argument("slp input count mismatch");
  std::vector<Element> values;
  values.reserve(slots_ + code_.size());
  values.assign(inputs.begin(), inputs.end());
  for (const SlpOp& op : code_) {
    switch (op.kind) {
      case SlpOp::Kind::mul:
        values.push_back(ops.mul(values[op.a], values[op.b]));
        break;
      case SlpOp::Kind::inv:
        values.push_back(ops.inv(values[op.a]));
        break;
      case SlpOp::Kind::pow:
        values.push_back(ops.pow(values[op.a], op.e));
        break;
    }
  }
  return values[result_];
}

namespace {

// append src's code to dst, remapping operand indices; returns what src's
// result index became
uint32_t splice(std::vector<SlpOp>& dst, uint32_t slots, const Slp& src) {
  uint32_t offset = static_cast<uint32_t>(dst.size());
  for (SlpOp op : src.code()) {
    if (op.a >= slots) op.a += offset;
    if (op.kind == SlpOp::Kind::mul && op.b >= slots) op.b += offset;
    dst.push_back(op);
  }
  uint32_t r = src.result();
  return r >= slots ? r + offset : r;
}

}  // namespace

Slp Slp::product(const Slp& x, const Slp& y) {
  if (x.slots() != y.slots()) throw std::invalid_argument("slp slot count mismatch");
  std::vector<SlpOp> code;
  uint32_t rx = splice(code, x.slots(), x);
  uint32_t ry = splice(code, x.slots(), y);
  code.push_back({SlpOp::Kind::mul, rx, ry, 0});
  return Slp(x.slots(), std::move(code), x.slots() + static_cast<uint32_t>(code.size()) - 1);
}

Slp Slp::inverse_of(const Slp& x) {
  std::vector<SlpOp> code = x.code();
  code.push_back({SlpOp::Kind::inv, x.result(), 0, 0});
  return Slp(x.slots(), std::move(code), x.slots() + static_cast<uint32_t>(code.size()) - 1);
}

Slp Slp::power_of(const Slp& x, int64_t e) {
  std::vector<SlpOp> code = x.code();
  code.push_back({SlpOp::Kind::pow, x.result(), 0, e});
  return Slp(x.slots(), std::move(code), x.slots() + static_cast<uint32_t>(code.size()) - 1);
}

Slp Slp::bind(const std::vector<Slp>& slot_programs) const {
  if (slot_programs.size() != slots_) throw std::invalid_argument("bind count mismatch");
  uint32_t inner_slots = slot_programs.front().slots();
  for (const Slp& s : slot_programs)
    if (s.slots() != inner_slots) throw std::invalid_argument("bind slot count mismatch");
  std::vector<SlpOp> code;
  std::vector<uint32_t> slot_result(slots_);
  for (uint32_t i = 0; i < slots_; ++i) slot_result[i] = splice(code, inner_slots, slot_programs[i]);
  uint32_t offset = static_cast<uint32_t>(code.size());
  auto remap = [&](uint32_t idx) {
    return idx < slots_ ? slot_result[idx] : idx - slots_ + inner_slots + offset;
  };
  for (SlpOp op : code_) {
    op.a = remap(op.a);
    if (op.kind == SlpOp::Kind::mul) op.b = remap(op.b);
    code.push_back(op);
  }
  return Slp(inner_slots, std::move(code), remap(result_));
}

std::string Slp::to_text() const {
  std::ostringstream out;
  out << "slots=" << slots_ << " result=" << result_ << "\n";
  for (const SlpOp& op : code_) {
    switch (op.kind) {
      case SlpOp::Kind::mul:
        out << "MUL " << op.a << " " << op.b << "\n";
        break;
      case SlpOp::Kind::inv:
        out << "INV " << op.a << "\n";
        break;
      case SlpOp::Kind::pow:
        out << "POW " << op.a << " " << op.e << "\n";
        break;
    }
  }
  return out.str();
}

Slp Slp::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string head;
  if (!std::getline(in, head)) throw std::invalid_argument("empty slp text");
  uint32_t slots = 0, result = 0;
  if (sscanf(head.c_str(), "slots=%u result=%u", &slots, &result) != 2)
    throw std::invalid_argument("bad slp header: " + head);
  std::vector<SlpOp> code;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    SlpOp op;
    if (kind == "MUL") {
      op.kind = SlpOp::Kind::mul;
      ls >> op.a >> op.b;
    } else if (kind == "INV") {
      op.kind = SlpOp::Kind::inv;
      ls >> op.a;
    } else if (kind == "POW") {
      op.kind = SlpOp::Kind::pow;
      ls >> op.a >> op.e;
    } else {
      throw std::invalid_argument("bad slp instruction: " + line);
    }
    if (ls.fail()) throw std::invalid_argument("bad slp operands: " + line);
    code.push_back(op);
  }
  return Slp(slots, std::move(code), result);
}

uint32_t SlpTape::append_mul(uint32_t a, uint32_t b) {
  check_operand(a);
  check_operand(b);
  code_.push_back({SlpOp::Kind::mul, a, b, 0});
  return slots_ + static_cast<uint32_t>(code_.size()) - 1;
}

uint32_t SlpTape::append_inv(uint32_t a) {
  check_operand(a);
  code_.push_back({SlpOp::Kind::inv, a, 0, 0});
  return slots_ + static_cast<uint32_t>(code_.size()) - 1;
}

uint32_t SlpTape::append_pow(uint32_t a, int64_t e) {
  check_operand(a);
  code_.push_back({SlpOp::Kind::pow, a, 0, e});
  return slots_ + static_cast<uint32_t>(code_.size()) - 1;
}

void SlpTape::check_operand(uint32_t idx) const {
  if (idx >= slots_ + code_.size()) throw std::invalid_argument("tape operand out of range");
}

Slp SlpTape::extract(uint32_t index) const {
  check_operand(index);
  if (index < slots_) return Slp::slot(slots_, index);
  // collect the reachable sub-DAG; tape order is already topological
  std::vector<uint32_t> needed;
  std::vector<bool> mark(code_.size(), false);
  std::vector<uint32_t> stack = {index - slots_};
  mark[index - slots_] = true;
  while (!stack.empty()) {
    uint32_t line = stack.back();
    stack.pop_back();
    needed.push_back(line);
    const SlpOp& op = code_[line];
    auto visit = [&](uint32_t operand) {
      if (operand >= slots_ && !mark[operand - slots_]) {
        mark[operand - slots_] = true;
        stack.push_back(operand - slots_);
      }
    };
    visit(op.a);
    if (op.kind == SlpOp::Kind::mul) visit(op.b);
  }
  std::sort(needed.begin(), needed.end());
  std::unordered_map<uint32_t, uint32_t> renumber;
  std::vector<SlpOp> out;
  out.reserve(needed.size());
  for (uint32_t line : needed) {
    SlpOp op = code_[line];
    auto remap = [&](uint32_t operand) {
      return operand < slots_ ? operand : renumber.at(operand);
    };
    op.a = remap(op.a);
    if (op.kind == SlpOp::Kind::mul) op.b = remap(op.b);
    renumber[slots_ + line] = slots_ + static_cast<uint32_t>(out.size());
    out.push_back(op);
  }
  return Slp(slots_, std::move(out), renumber.at(index));
}

}  // namespace gsift
