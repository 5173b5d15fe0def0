#include "gsift/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace gsift {

namespace {

struct Reduced {
  int64_t num;
  int64_t den;
};

Reduced reduce(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 g = den;
  while (a != 0) {
    __int128 t = g % a;
    g = a;
    a = t;
  }
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
    throw std::overflow_error("rational out of range");
  return {static_cast<int64_t>(num), static_cast<int64_t>(den)};
}

Rational make(__int128 num, __int128 den) {
  Reduced r = reduce(num, den);
  return Rational(r.num, r.den);
}

}  // namespace

Rational::Rational(int64_t num, int64_t den) {
  Reduced r = reduce(num, den);
  num_ = r.num;
  den_ = r.den;
}

double Rational::to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

Rational Rational::operator+(const Rational& o) const {
  return make(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
              static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return make(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
              static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return make(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return make(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad rational: " + text);
  }
}

}  // namespace gsift
