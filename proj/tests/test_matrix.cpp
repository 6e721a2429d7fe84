#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "chm/matrix.hpp"

using namespace chm;

namespace {

HadamardMatrix sample_f2() {
  return HadamardMatrix::from_turns(
      {{Rational(0), Rational(0)}, {Rational(0), Rational(1, 2)}}, {"F2"});
}

// Fourier-style grid built locally so these tests do not lean on the
// catalogue module.
HadamardMatrix sample_fourier(int n) {
  std::vector<std::vector<Rational>> grid(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      grid[i][j] = Rational(static_cast<long long>(i) * j, n).mod1();
  return HadamardMatrix::from_turns(grid, {});
}

}  // namespace

TEST_CASE("unimodular entries evaluate their phase") {
  const UnimodularEntry e = UnimodularEntry::from_turns(Rational(1, 4));
  CHECK(e.exact());
  CHECK(std::abs(e.value() - std::complex<double>(0, 1)) < 1e-15);
  CHECK(e.modulus_error() == 0.0);

  const UnimodularEntry f = UnimodularEntry::from_phase(PhaseValue::radians(2.1));
  CHECK(std::abs(f.value() - std::polar(1.0, 2.1)) < 1e-14);

  const UnimodularEntry prod = e * f;
  CHECK(std::abs(prod.value() - e.value() * f.value()) < 1e-14);
  CHECK(std::abs(e.conj().value() - std::conj(e.value())) < 1e-15);
}

TEST_CASE("from_value keeps the raw entry and reports its modulus error") {
  const UnimodularEntry e = UnimodularEntry::from_value({0.6, 0.8});
  CHECK(e.modulus_error() == doctest::Approx(0.0).epsilon(1e-12));
  const UnimodularEntry off = UnimodularEntry::from_value({0.5, 0.5});
  CHECK(off.modulus_error() == doctest::Approx(1 - std::sqrt(0.5)));
}

TEST_CASE("matrix construction and accessors") {
  const HadamardMatrix m = sample_f2();
  CHECK(m.n() == 2);
  CHECK(m.all_exact());
  CHECK(m.meta().name == "F2");
  CHECK(std::abs(m.value(1, 1) - std::complex<double>(-1, 0)) < 1e-15);
  CHECK(m.at(1, 1).phase().turns_value() == Rational(1, 2));

  const HadamardMatrix renamed = m.with_meta({"other"});
  CHECK(renamed.meta().name == "other");
  CHECK(max_entry_distance(m, renamed) == 0.0);
}

TEST_CASE("transpose, conjugate and hermitian transpose agree pointwise") {
  const HadamardMatrix m = sample_fourier(3);
  const MatrixVariants v = matrix_variants(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(v.transpose.value(i, j) - m.value(j, i)) < 1e-15);
      CHECK(std::abs(v.conjugate.value(i, j) - std::conj(m.value(i, j))) <
            1e-15);
      CHECK(std::abs(v.hermitian_transpose.value(i, j) -
                     std::conj(m.value(j, i))) < 1e-15);
    }
  CHECK(m.transpose().all_exact());
}

TEST_CASE("permutations invert and compose") {
  const PermutationVector p({2, 0, 3, 1});
  const PermutationVector q = p.inverse();
  for (int i = 0; i < 4; ++i) CHECK(q[p[i]] == i);
  CHECK_FALSE(p.is_identity());
  CHECK(PermutationVector::identity(4).is_identity());
  CHECK_THROWS_AS(PermutationVector({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("equivalence application and its inverse cancel") {
  const HadamardMatrix m = sample_fourier(4);
  const EquivalenceWitness w{
      {PhaseValue::radians(0.3), PhaseValue::radians(1.1),
       PhaseValue::radians(2.7), PhaseValue::radians(5.0)},
      PermutationVector({1, 3, 0, 2}),
      PermutationVector({2, 0, 3, 1}),
      {PhaseValue::radians(0.9), PhaseValue::radians(4.2),
       PhaseValue::radians(0.0), PhaseValue::radians(3.3)}};
  const HadamardMatrix t = apply_equivalence(w, m);
  CHECK(max_entry_distance(t, m) > 0.1);
  const HadamardMatrix back = apply_equivalence(w.inverse(), t);
  CHECK(max_entry_distance(back, m) < 1e-14);
}

TEST_CASE("apply_equivalence composes phases and index maps as documented") {
  const HadamardMatrix m = sample_fourier(3);
  const EquivalenceWitness w{
      {PhaseValue::turns(Rational(0)), PhaseValue::turns(Rational(1, 3)),
       PhaseValue::turns(Rational(0))},
      PermutationVector({1, 2, 0}),
      PermutationVector({0, 2, 1}),
      {PhaseValue::turns(Rational(1, 2)), PhaseValue::turns(Rational(0)),
       PhaseValue::turns(Rational(0))}};
  const HadamardMatrix t = apply_equivalence(w, m);
  CHECK(t.all_exact());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const std::complex<double> want = w.d1[i].unit() * m.value(w.p1[i], w.p2[j]) *
                                        w.d2[j].unit();
      CHECK(std::abs(t.value(i, j) - want) < 1e-15);
    }
}

TEST_CASE("rational rref reduces a known system") {
  RationalMatrix m(3, 4);
  // x + y = 2, 2x + y = 3, x - y = 0 -> x = y = 1.
  m.at(0, 0) = Rational(1); m.at(0, 1) = Rational(1); m.at(0, 3) = Rational(2);
  m.at(1, 0) = Rational(2); m.at(1, 1) = Rational(1); m.at(1, 3) = Rational(3);
  m.at(2, 0) = Rational(1); m.at(2, 1) = Rational(-1);
  CHECK(rref(m) == 2);
  CHECK(m.at(0, 0) == Rational(1));
  CHECK(m.at(0, 1) == Rational(0));
  CHECK(m.at(0, 3) == Rational(1));
  CHECK(m.at(1, 1) == Rational(1));
  CHECK(m.at(1, 3) == Rational(1));
  for (int j = 0; j < 4; ++j) CHECK(m.at(2, j).is_zero());
}

TEST_CASE("affine families validate their patterns") {
  const HadamardMatrix base = sample_fourier(4);
  RationalMatrix p(4, 4);
  p.at(1, 1) = Rational(1);
  p.at(1, 3) = Rational(1);
  p.at(3, 1) = Rational(1);
  p.at(3, 3) = Rational(1);

  const AffineFamily fam(base, {p}, {"a"});
  CHECK(fam.dimension() == 1);
  CHECK(fam.param_names() == std::vector<std::string>{"a"});

  // Zero parameters reproduce the base exactly.
  CHECK(max_entry_distance(fam.eval(std::vector<double>{0.0}), base) == 0.0);

  // A nonzero first-row weight violates the dephased-form constraint.
  RationalMatrix bad(4, 4);
  bad.at(0, 1) = Rational(1);
  CHECK_THROWS_AS(AffineFamily(base, {bad}, {"a"}), std::invalid_argument);

  // Linearly dependent patterns are rejected.
  RationalMatrix twice = p;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) twice.at(i, j) = p.at(i, j) * Rational(2);
  CHECK_THROWS_AS(AffineFamily(base, {p, twice}, {"a", "b"}),
                  std::invalid_argument);

  CHECK_THROWS_AS(fam.eval(std::vector<double>{0.1, 0.2}),
                  std::invalid_argument);
}

TEST_CASE("affine evaluation adds pattern multiples of the parameters") {
  const HadamardMatrix base = sample_fourier(4);
  RationalMatrix p(4, 4);
  p.at(1, 1) = Rational(1);
  p.at(1, 3) = Rational(-1);
  p.at(3, 1) = Rational(2);
  p.at(3, 3) = Rational(1);
  const AffineFamily fam(base, {p}, {"a"});

  const double a = 0.8;
  const HadamardMatrix m = fam.eval(std::vector<double>{a});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const std::complex<double> want =
          base.value(i, j) * std::polar(1.0, a * p.at(i, j).to_double());
      CHECK(std::abs(m.value(i, j) - want) < 1e-14);
    }

  // Exact rational-turn parameters keep the result exact.
  const HadamardMatrix e =
      fam.eval(std::vector<PhaseValue>{PhaseValue::turns(Rational(1, 8))});
  CHECK(e.all_exact());
  CHECK(e.at(1, 1).phase().turns_value() == Rational(1, 4) + Rational(1, 8));
}
