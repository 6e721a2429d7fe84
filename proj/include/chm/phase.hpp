#pragma once

#include <complex>
#include <optional>

#include "chm/rational.hpp"

namespace chm {

inline constexpr double kTau = 6.283185307179586476925286766559;  // 2*pi

// Phase of a unit-modulus complex number.
//
// Exact form: turns p/q, normalized into [0, 1) in lowest terms. Approximate
// form: radians, normalized into [0, 2*pi). Sums and negations of exact
// phases stay exact; anything touching an approximate phase degrades to
// radians. Exactness is what lets dephasing, equivalence transforms and
// log-phase extraction reproduce integer Butson exponents with no float
// error.
class PhaseValue {
 public:
  PhaseValue() : turns_(Rational(0)), radians_(0.0) {}

  static PhaseValue turns(const Rational& t);
  static PhaseValue radians(double r);

  bool exact() const { return turns_.has_value(); }

  // Pre: exact().
  const Rational& turns_value() const;

  // Exact phases evaluate as 2*pi*p/q.
  double radians_value() const { return radians_; }

  // e^{i*phase}. Exact phases with denominator in {1,2,3,4,6,8,12} use
  // closed-form constants (0, ±1/2, ±sqrt(2)/2, ±sqrt(3)/2, ±1) so Fourier
  // and Butson entries are reproducible bit for bit.
  std::complex<double> unit() const;

  PhaseValue operator+(const PhaseValue& o) const;
  PhaseValue operator-(const PhaseValue& o) const;
  PhaseValue operator-() const;

  // Integer multiple of the phase.
  PhaseValue times(std::int64_t k) const;

  bool is_zero() const;

 private:
  std::optional<Rational> turns_;  // set iff exact
  double radians_;                 // always valid, in [0, 2*pi)
};

std::complex<double> phase_to_complex(const PhaseValue& p);

// Wraps into [0, 2*pi). Values within one ulp of 2*pi map to 0.
double normalize_radians(double r);

}  // namespace chm
