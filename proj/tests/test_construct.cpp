#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "chm/analysis.hpp"
#include "chm/catalogue.hpp"
#include "chm/construct.hpp"

using namespace chm;

namespace {

DiagonalPhase zeros(int n) {
  return DiagonalPhase(static_cast<size_t>(n), PhaseValue::turns(Rational(0)));
}

DiagonalPhase radial(std::vector<double> v) {
  DiagonalPhase d;
  for (double r : v) d.push_back(PhaseValue::radians(r));
  return d;
}

}  // namespace

TEST_CASE("tensor products multiply entries blockwise") {
  const HadamardMatrix t = tensor(fourier(2), fourier(3));
  CHECK(t.n() == 6);
  CHECK(t.all_exact());
  CHECK(is_hadamard(t).pass);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const std::complex<double> want =
          fourier(2).value(i / 3, j / 3) * fourier(3).value(i % 3, j % 3);
      CHECK(std::abs(t.value(i, j) - want) < 1e-15);
    }
}

TEST_CASE("block composition with zero phases is the tensor product") {
  const HadamardMatrix a = fourier(3);
  const HadamardMatrix b = fourier(4);
  const HadamardMatrix lhs =
      dita_compose(a, {b, b, b}, {zeros(4), zeros(4)});
  const HadamardMatrix rhs = tensor(a, b);
  CHECK(lhs.all_exact());
  CHECK(max_entry_distance(lhs, rhs) == 0.0);
}

TEST_CASE("block composition accepts distinct blocks and free phases") {
  const HadamardMatrix m = dita_compose(
      fourier(2), {fourier(4), catalogue_get("F4", std::vector<double>{0.7})},
      {radial({0.0, 0.3, 1.9, 4.4})});
  CHECK(m.n() == 8);
  CHECK(is_hadamard(m).pass);

  // The upper-left block is the first inner matrix untouched.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(m.value(i, j) - fourier(4).value(i, j)) < 1e-15);
}

TEST_CASE("block composition validates shapes and the pinned leading phase") {
  CHECK_THROWS_AS(dita_compose(fourier(2), {fourier(4)}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      dita_compose(fourier(2), {fourier(4), fourier(3)}, {zeros(4)}),
      std::invalid_argument);
  CHECK_THROWS_AS(dita_compose(fourier(2), {fourier(4), fourier(4)},
                               {radial({0.5, 0, 0, 0})}),
                  std::invalid_argument);
}

TEST_CASE("free-parameter counting for composed families") {
  CHECK(dita_parameter_count(0, {2, 1}, 2, 6) == 8);   // FD12
  CHECK(dita_parameter_count(0, {2, 0}, 2, 6) == 7);   // FC12
  CHECK(dita_parameter_count(0, {1, 1}, 2, 6) == 7);   // DD12
  CHECK(dita_parameter_count(0, {0, 0}, 2, 6) == 5);   // CC12
  CHECK(dita_parameter_count(0, {1, 1}, 2, 7) == 8);   // PP14
  CHECK(dita_parameter_count(0, {0, 0}, 2, 7) == 6);   // CC14
}

TEST_CASE("doubling and quadrupling produce Hadamard matrices") {
  const HadamardMatrix d = doubled(fourier(3), fourier(3),
                                   radial({0.0, 0.8, 2.2}));
  CHECK(d.n() == 6);
  CHECK(is_hadamard(d).pass);

  const HadamardMatrix q =
      quadrupled(fourier(2), fourier(2), fourier(2), fourier(2), zeros(2),
                 zeros(2), zeros(2));
  CHECK(q.n() == 8);
  CHECK(is_hadamard(q).pass);
}

TEST_CASE("quadrupling scalars reproduces the four-point tensor square") {
  const HadamardMatrix one = fourier(1);
  const HadamardMatrix w =
      quadrupled(one, one, one, one, zeros(1), zeros(1), zeros(1));
  REQUIRE(w.n() == 4);
  CHECK(is_hadamard(w).pass);
  const EquivalenceResult r =
      equivalence_search(w, tensor(fourier(2), fourier(2)));
  CHECK(r.status == EquivalenceStatus::Found);
}

TEST_CASE("chains multiply a row against a conjugated row") {
  const auto c = chains(fourier(4), 1, 3);
  REQUIRE(c.size() == 4);
  const std::vector<double> want = {1, -1, 1, -1};
  std::complex<double> sum = 0;
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(c[static_cast<size_t>(k)] -
                   std::complex<double>(want[static_cast<size_t>(k)], 0)) <
          1e-14);
    sum += c[static_cast<size_t>(k)];
  }
  CHECK(std::abs(sum) < 1e-13);
  CHECK_THROWS_AS(chains(fourier(4), 3, 1), std::invalid_argument);
}

TEST_CASE("pair indexing is a bijection onto 0..C(n,2)-1") {
  const int n = 6;
  std::set<int> seen;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int k = SubchainPattern::pair_index(n, i, j);
      CHECK(k >= 0);
      CHECK(k < SubchainPattern::pair_count(n));
      seen.insert(k);
    }
  CHECK(static_cast<int>(seen.size()) == SubchainPattern::pair_count(n));

  const SubchainPattern t = SubchainPattern::trivial(4);
  CHECK(t.blocks.size() == 6);
  CHECK(t.blocks[0].size() == 1);
  CHECK(t.blocks[0][0].size() == 4);
}

TEST_CASE("the trivial pattern of a Fourier matrix pins everything") {
  for (int n : {4, 5, 6}) {
    const PatternSpace s =
        solve_pattern(fourier(n), SubchainPattern::trivial(n));
    CHECK(s.dimension == 0);
  }
}

TEST_CASE("a refined pattern frees the known one-parameter direction") {
  // Split every chain of F4 into its zero-sum halves.
  SubchainPattern p = SubchainPattern::trivial(4);
  p.blocks[SubchainPattern::pair_index(4, 0, 2)] = {{0, 1}, {2, 3}};
  p.blocks[SubchainPattern::pair_index(4, 1, 3)] = {{0, 1}, {2, 3}};
  p.blocks[SubchainPattern::pair_index(4, 0, 1)] = {{0, 2}, {1, 3}};
  p.blocks[SubchainPattern::pair_index(4, 2, 3)] = {{0, 2}, {1, 3}};
  p.blocks[SubchainPattern::pair_index(4, 0, 3)] = {{0, 2}, {1, 3}};
  p.blocks[SubchainPattern::pair_index(4, 1, 2)] = {{0, 2}, {1, 3}};
  const PatternSpace s = solve_pattern(fourier(4), p);
  CHECK(s.dimension == 1);

  RationalMatrix expect(4, 4);
  expect.at(1, 1) = Rational(1);
  expect.at(1, 3) = Rational(1);
  expect.at(3, 1) = Rational(1);
  expect.at(3, 3) = Rational(1);
  PatternSpace wanted;
  wanted.dimension = 1;
  wanted.basis = {expect};
  CHECK(s.same_space(wanted));
}

TEST_CASE("unclosed blocks are rejected with a located error") {
  SubchainPattern p = SubchainPattern::trivial(4);
  p.blocks[SubchainPattern::pair_index(4, 0, 1)] = {{0, 1}, {2, 3}};
  CHECK_THROWS_AS(solve_pattern(fourier(4), p), std::invalid_argument);
}

TEST_CASE("pattern solution spaces never exceed the defect") {
  for (const char* id : {"F4", "F6", "S6"}) {
    const HadamardMatrix m = catalogue_get(id);
    const int d = defect(m).defect;
    for (const auto& [pattern, space] : enumerate_patterns(m))
      CHECK(space.dimension <= d);
  }
}

TEST_CASE("maximal pattern enumeration on the four-point Fourier matrix") {
  const auto spaces = enumerate_patterns(fourier(4));
  REQUIRE(spaces.size() == 1);
  CHECK(spaces[0].second.dimension == 1);
}

TEST_CASE("enumeration respects its node budget") {
  EnumerationLimits limits;
  limits.max_nodes = 1;
  CHECK_THROWS_AS(enumerate_patterns(fourier(6), limits), std::runtime_error);
  CHECK_THROWS_AS(enumerate_patterns(fourier(8)), std::invalid_argument);
}

TEST_CASE("family transposes evaluate to transposed members") {
  const AffineFamily f6 = catalogue_family("F6");
  const AffineFamily f6t = catalogue_family("F6T");
  const std::vector<double> params = {0.43, 1.91};
  CHECK(max_entry_distance(f6t.eval(params), f6.eval(params).transpose()) <
        1e-14);
}
