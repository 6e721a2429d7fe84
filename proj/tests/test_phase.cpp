#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "chm/phase.hpp"

using namespace chm;

TEST_CASE("rational arithmetic normalizes and reduces") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
  CHECK((Rational(1, 2) - Rational(1, 2)).is_zero());
  CHECK((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
  CHECK((Rational(1, 2) / Rational(3, 2)) == Rational(1, 3));
  CHECK(Rational(7).is_integer());
  CHECK(Rational(7, 1).num() == 7);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational comparison and mod1") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(5, 4).mod1() == Rational(1, 4));
  CHECK(Rational(-1, 4).mod1() == Rational(3, 4));
  CHECK(Rational(3).mod1().is_zero());
}

TEST_CASE("rational parsing round trips") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational(22, 7).str() == "22/7");
  CHECK(Rational(-3).str() == "-3/1");
  CHECK(Rational::parse(Rational(-14, 6).str()) == Rational(-7, 3));
  CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("a"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("rational overflow is detected, not wrapped") {
  const Rational big(1, 1000000007);
  Rational acc(0);
  CHECK_THROWS_AS([&] {
    for (int k = 0; k < 64; ++k) acc += Rational(1, 1000000007 + 2 * k);
  }(), std::overflow_error);
}

TEST_CASE("exact phases carry rational turns") {
  const PhaseValue p = PhaseValue::turns(Rational(1, 3));
  CHECK(p.exact());
  CHECK(p.turns_value() == Rational(1, 3));
  CHECK(p.radians_value() == doctest::Approx(kTau / 3).epsilon(1e-15));
  const std::complex<double> u = p.unit();
  CHECK(std::abs(std::abs(u) - 1.0) < 1e-15);
  CHECK(u.real() == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("turns are stored mod 1") {
  CHECK(PhaseValue::turns(Rational(7, 3)).turns_value() == Rational(1, 3));
  CHECK(PhaseValue::turns(Rational(-1, 4)).turns_value() == Rational(3, 4));
}

TEST_CASE("radian phases normalize into one period") {
  const PhaseValue p = PhaseValue::radians(-1.0);
  CHECK_FALSE(p.exact());
  CHECK(p.radians_value() == doctest::Approx(kTau - 1.0).epsilon(1e-15));
  CHECK(PhaseValue::radians(3 * kTau + 0.5).radians_value() ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("a zero radian phase is promoted to the exact zero") {
  const PhaseValue p = PhaseValue::radians(0.0);
  CHECK(p.exact());
  CHECK(p.is_zero());
  CHECK((PhaseValue::turns(Rational(1, 2)) + PhaseValue::radians(0.0)).exact());
}

TEST_CASE("phase arithmetic keeps exactness when both sides are exact") {
  const PhaseValue a = PhaseValue::turns(Rational(1, 6));
  const PhaseValue b = PhaseValue::turns(Rational(1, 3));
  CHECK((a + b).exact());
  CHECK((a + b).turns_value() == Rational(1, 2));
  CHECK((a - b).turns_value() == Rational(5, 6));
  CHECK((-a).turns_value() == Rational(5, 6));
  CHECK(a.times(4).turns_value() == Rational(2, 3));

  const PhaseValue c = PhaseValue::radians(0.7);
  CHECK_FALSE((a + c).exact());
  CHECK((a + c).radians_value() ==
        doctest::Approx(kTau / 6 + 0.7).epsilon(1e-14));
}

TEST_CASE("phase_to_complex matches polar evaluation") {
  for (double r : {0.0, 0.3, 1.7, 3.9, 6.2}) {
    const std::complex<double> got = phase_to_complex(PhaseValue::radians(r));
    const std::complex<double> want = std::polar(1.0, r);
    CHECK(std::abs(got - want) < 1e-14);
  }
}

TEST_CASE("normalize_radians lands in the principal period") {
  CHECK(normalize_radians(0.0) == 0.0);
  CHECK(normalize_radians(kTau) == 0.0);
  CHECK(normalize_radians(-0.25) == doctest::Approx(kTau - 0.25));
  CHECK(normalize_radians(10 * kTau + 1.25) == doctest::Approx(1.25));
}
