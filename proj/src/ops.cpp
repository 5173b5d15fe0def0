#include "gsift/ops.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gsift {

Element Ops::mul(const Element& a, const Element& b) {
  counter_->add();
  return multiply(a, b);
}

Element Ops::inv(const Element& a) {
  counter_->add();
  return inverse(a);
}

Element Ops::conj(const Element& a, const Element& b) {
  Element bi = inv(b);
  return mul(mul(bi, a), b);
}

Element Ops::conj_given_inverse(const Element& b_inv, const Element& a, const Element& b) {
  return mul(mul(b_inv, a), b);
}

Element Ops::pow(const Element& a, int64_t e) {
  if (e == 0) return Element::identity_like(a);
  Element base = a;
  if (e < 0) {
    base = inv(base);
    e = -e;
  }
  // left-to-right binary powering: square per bit, multiply on set bits
  int bit = 63 - __builtin_clzll(static_cast<uint64_t>(e));
  Element r = base;
  for (--bit; bit >= 0; --bit) {
    r = mul(r, r);
    if ((e >> bit) & 1) r = mul(r, base);
  }
  return r;
}

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> ps;
  for (uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      ps.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

OrderProbe::OrderProbe(std::vector<uint64_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw std::invalid_argument("empty order set");
  std::sort(orders_.begin(), orders_.end());
  orders_.erase(std::unique(orders_.begin(), orders_.end()), orders_.end());
  if (orders_.front() == 0) throw std::invalid_argument("order 0 is meaningless");
  std::vector<uint64_t> closure = orders_;
  for (uint64_t n : orders_) {
    std::vector<uint64_t> divs;
    for (uint64_t q : prime_factors(n)) {
      divs.push_back(n / q);
      closure.push_back(n / q);
    }
    maximal_divisors_.push_back(std::move(divs));
  }
  std::sort(closure.begin(), closure.end());
  closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
  closure_size_ = closure.size();
}

bool OrderProbe::order_in(const Element& g, Ops& ops) const {
  // power cache shared across all candidates, keyed by exponent
  std::map<uint64_t, Element> cache;
  cache.emplace(1, g);
  std::vector<Element> squares;  // squares[i] = g^(2^i)
  squares.push_back(g);
  auto square_up_to = [&](int bit) {
    while (static_cast<int>(squares.size()) <= bit)
      squares.push_back(ops.mul(squares.back(), squares.back()));
  };
  auto power = [&](uint64_t e) -> const Element& {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    int top = 63 - __builtin_clzll(e);
    square_up_to(top);
    Element r = squares[top];
    for (int bit = top - 1; bit >= 0; --bit)
      if ((e >> bit) & 1) r = ops.mul(r, squares[bit]);
    return cache.emplace(e, std::move(r)).first->second;
  };
  for (size_t i = 0; i < orders_.size(); ++i) {
    uint64_t n = orders_[i];
    if (!power(n).is_identity()) continue;
    bool exact = true;
    for (uint64_t d : maximal_divisors_[i]) {
      if (power(d).is_identity()) {
        exact = false;
        break;
      }
    }
    if (exact) return true;
  }
  return false;
}

uint64_t element_order(const Element& g) {
  Element x = g;
  uint64_t n = 1;
  while (!x.is_identity()) {
    x = multiply(x, g);
    ++n;
    if (n > 100'000'000ull) throw std::runtime_error("element order ran away");
  }
  return n;
}

}  // namespace gsift
