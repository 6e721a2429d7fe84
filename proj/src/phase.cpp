#include "chm/phase.hpp"

#include <cmath>

namespace chm {

namespace {

constexpr double kHalfSqrt3 = 0.86602540378443864676372317075294;  // sqrt(3)/2
constexpr double kHalfSqrt2 = 0.70710678118654752440084436210485;  // sqrt(2)/2

// Closed forms for denominators whose cosines are quadratic surds; everything
// else goes through libm on the reduced argument.
std::complex<double> unit_from_turns(const Rational& t) {
  const std::int64_t p = t.num();
  const std::int64_t q = t.den();
  switch (q) {
    case 1:
      return {1.0, 0.0};
    case 2:
      return {-1.0, 0.0};
    case 3:
      return p == 1 ? std::complex<double>(-0.5, kHalfSqrt3)
                    : std::complex<double>(-0.5, -kHalfSqrt3);
    case 4:
      return p == 1 ? std::complex<double>(0.0, 1.0)
                    : std::complex<double>(0.0, -1.0);
    case 6:
      return p == 1 ? std::complex<double>(0.5, kHalfSqrt3)
                    : std::complex<double>(0.5, -kHalfSqrt3);
    case 8:
      switch (p) {
        case 1: return {kHalfSqrt2, kHalfSqrt2};
        case 3: return {-kHalfSqrt2, kHalfSqrt2};
        case 5: return {-kHalfSqrt2, -kHalfSqrt2};
        default: return {kHalfSqrt2, -kHalfSqrt2};  // p == 7
      }
    case 12:
      switch (p) {
        case 1: return {kHalfSqrt3, 0.5};
        case 5: return {-kHalfSqrt3, 0.5};
        case 7: return {-kHalfSqrt3, -0.5};
        default: return {kHalfSqrt3, -0.5};  // p == 11
      }
    default: {
      const double r = kTau * (static_cast<double>(p) / static_cast<double>(q));
      return {std::cos(r), std::sin(r)};
    }
  }
}

}  // namespace

double normalize_radians(double r) {
  double x = std::fmod(r, kTau);
  if (x < 0) x += kTau;
  if (x >= kTau) x = 0.0;  // fmod can land exactly on 2*pi after the add
  return x;
}

PhaseValue PhaseValue::turns(const Rational& t) {
  PhaseValue p;
  p.turns_ = t.mod1();
  p.radians_ = kTau * p.turns_->to_double();
  return p;
}

PhaseValue PhaseValue::radians(double r) {
  PhaseValue p;
  const double x = normalize_radians(r);
  if (x == 0.0) return p;  // phase 0 is exact regardless of provenance
  p.turns_.reset();
  p.radians_ = x;
  return p;
}

const Rational& PhaseValue::turns_value() const {
  if (!turns_) throw std::logic_error("approximate phase has no exact turns");
  return *turns_;
}

std::complex<double> PhaseValue::unit() const {
  if (turns_) return unit_from_turns(*turns_);
  return {std::cos(radians_), std::sin(radians_)};
}

PhaseValue PhaseValue::operator+(const PhaseValue& o) const {
  if (turns_ && o.turns_) return turns(*turns_ + *o.turns_);
  return radians(radians_ + o.radians_);
}

PhaseValue PhaseValue::operator-(const PhaseValue& o) const {
  if (turns_ && o.turns_) return turns(*turns_ - *o.turns_);
  return radians(radians_ - o.radians_);
}

PhaseValue PhaseValue::operator-() const {
  if (turns_) return turns(-*turns_);
  return radians(radians_ == 0.0 ? 0.0 : kTau - radians_);
}

PhaseValue PhaseValue::times(std::int64_t k) const {
  if (turns_) return turns(*turns_ * Rational(k));
  return radians(radians_ * static_cast<double>(k));
}

bool PhaseValue::is_zero() const {
  if (turns_) return turns_->is_zero();
  return radians_ == 0.0;
}

std::complex<double> phase_to_complex(const PhaseValue& p) { return p.unit(); }

}  // namespace chm
