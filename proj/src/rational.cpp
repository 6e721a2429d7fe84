#include "chm/rational.hpp"

#include <cstdlib>
#include <limits>

namespace chm {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

Rational Rational::operator-() const { return make(-__int128(num_), den_); }

Rational Rational::operator+(const Rational& o) const {
  return make(__int128(num_) * o.den_ + __int128(o.num_) * den_,
              __int128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return make(__int128(num_) * o.den_ - __int128(o.num_) * den_,
              __int128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return make(__int128(num_) * o.num_, __int128(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
  return make(__int128(num_) * o.den_, __int128(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return __int128(num_) * o.den_ < __int128(o.num_) * den_;
}

Rational Rational::mod1() const {
  __int128 n = num_;
  __int128 d = den_;
  __int128 r = n % d;
  if (r < 0) r += d;
  return make(r, d);
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  size_t slash = s.find('/');
  errno = 0;
  char* end = nullptr;
  const std::string num_part = slash == std::string::npos ? s : s.substr(0, slash);
  long long n = std::strtoll(num_part.c_str(), &end, 10);
  if (errno != 0 || end == num_part.c_str() || *end != '\0') {
    throw std::invalid_argument("bad rational literal: " + s);
  }
  long long d = 1;
  if (slash != std::string::npos) {
    const std::string den_part = s.substr(slash + 1);
    errno = 0;
    d = std::strtoll(den_part.c_str(), &end, 10);
    if (errno != 0 || end == den_part.c_str() || *end != '\0' || d == 0) {
      throw std::invalid_argument("bad rational literal: " + s);
    }
  }
  return make(n, d);
}

}  // namespace chm
