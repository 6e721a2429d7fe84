#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chm {

// Exact rational on int64. Always normalized: den > 0, gcd(|num|, den) == 1.
// Intermediates widen to __int128; results that cannot be narrowed back to
// int64 throw std::overflow_error. Phase and pattern workloads keep values
// tiny, so overflow is a logic-error signal rather than an expected path.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws on o == 0
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  // Wraps into [0, 1).
  Rational mod1() const;

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "p/q" with the normalized denominator, e.g. "0/1", "1/2", "-3/4".
  std::string str() const;

  // Accepts "p" and "p/q" (arbitrary sign and common factors; normalizes).
  static Rational parse(const std::string& s);

 private:
  static Rational make(__int128 n, __int128 d);
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace chm
