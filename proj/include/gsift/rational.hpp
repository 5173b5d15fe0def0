#pragma once

#include <cstdint>
#include <string>

namespace gsift {

// Exact rational arithmetic with 64-bit numerator and denominator, always
// normalized (gcd 1, denominator positive). The quantities here are tiny
// fractions like 13/165, but intermediates go through __int128 anyway.
class Rational {
 public:
  Rational() = default;
  Rational(int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(int64_t num, int64_t den);

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }
  double to_double() const;
  bool is_zero() const { return num_ == 0; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  // "13/165", or just "3" when the denominator is 1
  std::string str() const;
  static Rational parse(const std::string& text);

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

}  // namespace gsift
