#include "chm/catalogue.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chm/analysis.hpp"
#include "chm/construct.hpp"

namespace chm {

namespace {

// Matrix whose (i,j) phase is exps[i][j]/q turns.
HadamardMatrix from_units(int q, const std::vector<std::vector<int>>& exps) {
  std::vector<std::vector<Rational>> grid;
  grid.reserve(exps.size());
  for (const auto& row : exps) {
    std::vector<Rational> r;
    r.reserve(row.size());
    for (int k : row) r.emplace_back(k, q);
    grid.push_back(std::move(r));
  }
  return HadamardMatrix::from_turns(grid);
}

// M(i,j) = x[(i-j) mod n].
HadamardMatrix circulant(const std::vector<std::complex<double>>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<UnimodularEntry> e;
  e.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      e.push_back(UnimodularEntry::from_value(x[((i - j) % n + n) % n]));
  return HadamardMatrix(n, std::move(e));
}

// First columns of the circulant entries. Every root below is an exact
// algebraic unit except the C7C/C7D phases, which are only known to seven
// digits (hence those entries' loose validation tolerance).
std::vector<std::complex<double>> circulant_column(const std::string& id) {
  const std::complex<double> iu(0.0, 1.0);
  if (id == "C6") {
    const double s3 = std::sqrt(3.0);
    const std::complex<double> d((1.0 - s3) / 2.0, std::sqrt(s3 / 2.0));
    return {1.0, iu / d, -1.0 / d, -iu, -d, iu * d};
  }
  if (id == "C7A" || id == "C7B") {
    std::complex<double> d(-3.0 / 4.0, std::sqrt(7.0) / 4.0);
    if (id == "C7B") d = std::conj(d);
    return {1.0, 1.0, 1.0, d, 1.0, d, d};
  }
  if (id == "C7C" || id == "C7D") {
    const double a = 4.312839, b = 1.356228, c = 1.900668;
    std::complex<double> x = std::polar(1.0, a);
    std::complex<double> y = std::polar(1.0, a + b);
    std::complex<double> z = std::polar(1.0, a + b + c);
    if (id == "C7D") {
      x = std::conj(x);
      y = std::conj(y);
      z = std::conj(z);
    }
    return {1.0, x, y, z, z, y, x};
  }
  if (id == "C11A" || id == "C11B") {
    std::complex<double> e(-5.0 / 6.0, std::sqrt(11.0) / 6.0);
    if (id == "C11B") e = std::conj(e);
    return {1.0, 1.0, e, 1.0, 1.0, 1.0, e, e, e, 1.0, e};
  }
  if (id == "C13A" || id == "C13B") {
    const double s = std::sqrt(13.0);
    const std::complex<double> z =
        id == "C13A"
            ? std::complex<double>((-1.0 + s) / 12.0,
                                   std::sqrt(130.0 + 2.0 * s) / 12.0)
            : std::complex<double>((-1.0 - s) / 12.0,
                                   std::sqrt(130.0 - 2.0 * s) / 12.0);
    const std::complex<double> w = std::conj(z);
    return {1.0, z, w, z, z, w, w, w, w, z, z, w, z};
  }
  throw std::invalid_argument("catalogue entry " + id +
                              " has no circulant form");
}

HadamardMatrix s6_matrix() {
  return from_units(3, {{0, 0, 0, 0, 0, 0},
                        {0, 0, 1, 1, 2, 2},
                        {0, 1, 0, 2, 2, 1},
                        {0, 1, 2, 0, 1, 2},
                        {0, 2, 2, 1, 0, 1},
                        {0, 2, 1, 2, 1, 0}});
}

HadamardMatrix d6_base() {
  return from_units(4, {{0, 0, 0, 0, 0, 0},
                        {0, 2, 1, 3, 3, 1},
                        {0, 1, 2, 1, 3, 3},
                        {0, 3, 1, 2, 1, 3},
                        {0, 3, 3, 1, 2, 1},
                        {0, 1, 3, 3, 1, 2}});
}

HadamardMatrix p7_base() {
  return from_units(6, {{0, 0, 0, 0, 0, 0, 0},
                        {0, 1, 4, 5, 3, 3, 1},
                        {0, 4, 1, 3, 5, 3, 1},
                        {0, 5, 3, 1, 4, 1, 3},
                        {0, 3, 5, 4, 1, 1, 3},
                        {0, 3, 3, 1, 1, 4, 5},
                        {0, 1, 1, 3, 3, 5, 4}});
}

HadamardMatrix n11_matrix() {
  // Entries are sign * a^pow for the unit a = (-3 - i*sqrt(7))/4.
  static const int kSign[11][11] = {
      {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
      {1, 1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
      {1, -1, 1, -1, -1, -1, -1, -1, -1, -1, -1},
      {1, -1, -1, -1, 1, -1, -1, -1, -1, -1, -1},
      {1, -1, -1, 1, -1, -1, -1, -1, -1, -1, -1},
      {1, -1, -1, -1, -1, -1, 1, -1, -1, -1, -1},
      {1, -1, -1, -1, -1, 1, -1, -1, -1, -1, -1},
      {1, -1, -1, -1, -1, -1, -1, -1, 1, -1, -1},
      {1, -1, -1, -1, -1, -1, -1, 1, -1, -1, -1},
      {1, -1, -1, -1, -1, -1, -1, -1, -1, -1, 1},
      {1, -1, -1, -1, -1, -1, -1, -1, -1, 1, -1}};
  static const int kPow[11][11] = {
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 1, 1, 1, 1, 0, 0, -1, -1, 0, 0},
      {0, 1, 1, 1, 1, 0, 0, 0, 0, -1, -1},
      {0, 1, 1, 0, 1, 0, 1, -1, 0, -1, 0},
      {0, 1, 1, 1, 0, 1, 0, 0, -1, 0, -1},
      {0, 0, 0, 0, 1, 1, 0, -1, 0, 0, -1},
      {0, 0, 0, 1, 0, 0, 1, 0, -1, -1, 0},
      {0, -1, 0, -1, 0, -1, 0, -1, -1, -2, -2},
      {0, -1, 0, 0, -1, 0, -1, -1, -1, -2, -2},
      {0, 0, -1, -1, 0, 0, -1, -2, -2, -2, -2},
      {0, 0, -1, 0, -1, -1, 0, -2, -2, -2, -2}};
  const std::complex<double> a(-3.0 / 4.0, -std::sqrt(7.0) / 4.0);
  const std::complex<double> powers[4] = {std::conj(a) * std::conj(a),
                                          std::conj(a), 1.0, a};
  std::vector<UnimodularEntry> e;
  e.reserve(121);
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j) {
      std::complex<double> v = powers[kPow[i][j] + 2];
      if (kSign[i][j] < 0) v = -v;
      e.push_back(UnimodularEntry::from_value(v));
    }
  return HadamardMatrix(11, std::move(e));
}

// ---------------------------------------------------------------------------
// Affine family construction. A family is its dephased base plus one rational
// coefficient grid per parameter; the grids are written below as groups of
// cells sharing one signed-parameter expression such as "c-a+e".

struct FamilySpec {
  HadamardMatrix base;
  std::vector<RationalMatrix> patterns;
  std::vector<std::string> names;
};

void add_cell(std::vector<RationalMatrix>& ps, const std::string& letters,
              int i, int j, const char* expr) {
  int sign = 1;
  for (const char* s = expr; *s; ++s) {
    if (*s == '+') {
      sign = 1;
      continue;
    }
    if (*s == '-') {
      sign = -1;
      continue;
    }
    const size_t k = letters.find(*s);
    if (k == std::string::npos)
      throw std::logic_error(std::string("unknown parameter letter: ") + *s);
    ps[k].at(i, j) += Rational(sign);
    sign = 1;
  }
}

struct CellGroup {
  std::vector<int> rows, cols;
  const char* expr;
};

FamilySpec letter_family(HadamardMatrix base, const std::string& letters,
                         const std::vector<CellGroup>& groups) {
  const int n = base.n();
  std::vector<RationalMatrix> ps(letters.size(), RationalMatrix(n, n));
  for (const auto& g : groups)
    for (int i : g.rows)
      for (int j : g.cols) add_cell(ps, letters, i, j, g.expr);
  std::vector<std::string> names;
  names.reserve(letters.size());
  for (char c : letters) names.emplace_back(1, c);
  return {std::move(base), std::move(ps), std::move(names)};
}

FamilySpec transposed(FamilySpec s) {
  std::vector<RationalMatrix> pt;
  pt.reserve(s.patterns.size());
  for (const auto& p : s.patterns) pt.push_back(p.transpose());
  return {s.base.transpose(), std::move(pt), std::move(s.names)};
}

FamilySpec spec_f4() {
  return letter_family(fourier(4), "a", {{{1, 3}, {1, 3}, "a"}});
}

FamilySpec spec_f6() {
  return letter_family(fourier(6), "ab",
                       {{{1, 3, 5}, {1, 4}, "a"}, {{1, 3, 5}, {2, 5}, "b"}});
}

FamilySpec spec_d6() {
  return letter_family(d6_base(), "c",
                       {{{2, 5}, {3, 4}, "c"}, {{3, 4}, {2, 5}, "-c"}});
}

FamilySpec spec_p7() {
  return letter_family(p7_base(), "a",
                       {{{1, 2}, {1, 2}, "a"}, {{3, 4}, {3, 4}, "-a"}});
}

FamilySpec spec_f8() {
  return letter_family(fourier(8), "abcde",
                       {{{1, 5}, {1, 5}, "a"},
                        {{1, 5}, {2, 6}, "b"},
                        {{1, 5}, {3, 7}, "c"},
                        {{2, 6}, {1, 3, 5, 7}, "d"},
                        {{3, 7}, {1, 5}, "e"},
                        {{3, 7}, {2, 6}, "b"},
                        {{3, 7}, {3, 7}, "c-a+e"}});
}

FamilySpec spec_f9() {
  return letter_family(fourier(9), "abcd",
                       {{{1, 4, 7}, {1, 4, 7}, "a"},
                        {{1, 4, 7}, {2, 5, 8}, "b"},
                        {{2, 5, 8}, {1, 4, 7}, "c"},
                        {{2, 5, 8}, {2, 5, 8}, "d"}});
}

FamilySpec spec_f10() {
  return letter_family(fourier(10), "abcd",
                       {{{1, 3, 5, 7, 9}, {1, 6}, "a"},
                        {{1, 3, 5, 7, 9}, {2, 7}, "b"},
                        {{1, 3, 5, 7, 9}, {3, 8}, "c"},
                        {{1, 3, 5, 7, 9}, {4, 9}, "d"}});
}

FamilySpec spec_f12a() {
  return letter_family(fourier(12), "abcdefghi",
                       {{{1, 7}, {1, 7}, "a"},
                        {{1, 7}, {2, 8}, "b"},
                        {{1, 7}, {3, 9}, "c"},
                        {{1, 7}, {4, 10}, "d"},
                        {{1, 7}, {5, 11}, "e"},
                        {{2, 8}, {1, 3, 5, 7, 9, 11}, "f"},
                        {{3, 9}, {1, 7}, "g"},
                        {{3, 9}, {2, 8}, "b"},
                        {{3, 9}, {3, 9}, "c-a+g"},
                        {{3, 9}, {4, 10}, "d"},
                        {{3, 9}, {5, 11}, "e-a+g"},
                        {{4, 10}, {1, 3, 5, 7, 9, 11}, "h"},
                        {{5, 11}, {1, 7}, "i"},
                        {{5, 11}, {2, 8}, "b"},
                        {{5, 11}, {3, 9}, "c-a+i"},
                        {{5, 11}, {4, 10}, "d"},
                        {{5, 11}, {5, 11}, "e-a+i"}});
}

FamilySpec spec_f12b() {
  return letter_family(fourier(12), "abcdefghi",
                       {{{1, 5, 9}, {1, 7}, "a"},
                        {{1, 5, 9}, {2, 8}, "b"},
                        {{1, 5, 9}, {3, 9}, "c"},
                        {{1, 5, 9}, {4, 10}, "d"},
                        {{1, 5, 9}, {5, 11}, "e"},
                        {{2, 6, 10}, {1, 4, 7, 10}, "f"},
                        {{2, 6, 10}, {2, 5, 8, 11}, "g"},
                        {{3, 7, 11}, {1, 7}, "h"},
                        {{3, 7, 11}, {2, 8}, "i"},
                        {{3, 7, 11}, {3, 9}, "c"},
                        {{3, 7, 11}, {4, 10}, "d-a+h"},
                        {{3, 7, 11}, {5, 11}, "e-b+i"}});
}

FamilySpec spec_f12c() {
  return letter_family(fourier(12), "abcdefghi",
                       {{{1, 7}, {1, 7}, "a"},
                        {{1, 7}, {2, 6, 10}, "b"},
                        {{1, 7}, {3, 9}, "c"},
                        {{1, 7}, {5, 11}, "d"},
                        {{2, 8}, {1, 3, 5, 7, 9, 11}, "e"},
                        {{2, 8}, {2, 6, 10}, "f"},
                        {{3, 9}, {1, 7}, "g"},
                        {{3, 9}, {3, 9}, "c-a+g"},
                        {{3, 9}, {5, 11}, "d-a+g"},
                        {{4, 10}, {1, 3, 5, 7, 9, 11}, "h"},
                        {{4, 10}, {2, 6, 10}, "b"},
                        {{5, 11}, {1, 7}, "i"},
                        {{5, 11}, {2, 6, 10}, "f"},
                        {{5, 11}, {3, 9}, "c-a+i"},
                        {{5, 11}, {5, 11}, "d-a+i"}});
}

FamilySpec spec_f12d() {
  return letter_family(fourier(12), "abcdefghi",
                       {{{1, 7}, {1, 5, 9}, "a"},
                        {{1, 7}, {2, 8}, "b"},
                        {{1, 7}, {3, 7, 11}, "c"},
                        {{1, 7}, {4, 10}, "d"},
                        {{2, 8}, {1, 5, 9}, "e"},
                        {{2, 8}, {3, 7, 11}, "f"},
                        {{3, 9}, {1, 3, 5, 7, 9, 11}, "g"},
                        {{3, 9}, {2, 8}, "b"},
                        {{3, 9}, {4, 10}, "d"},
                        {{4, 10}, {1, 5, 9}, "h"},
                        {{4, 10}, {3, 7, 11}, "c-a+h"},
                        {{5, 11}, {1, 5, 9}, "i"},
                        {{5, 11}, {2, 8}, "b"},
                        {{5, 11}, {3, 7, 11}, "f-e+i"},
                        {{5, 11}, {4, 10}, "d"}});
}

FamilySpec spec_f14() {
  return letter_family(fourier(14), "abcdef",
                       {{{1, 3, 5, 7, 9, 11, 13}, {1, 8}, "a"},
                        {{1, 3, 5, 7, 9, 11, 13}, {2, 9}, "b"},
                        {{1, 3, 5, 7, 9, 11, 13}, {3, 10}, "c"},
                        {{1, 3, 5, 7, 9, 11, 13}, {4, 11}, "d"},
                        {{1, 3, 5, 7, 9, 11, 13}, {5, 12}, "e"},
                        {{1, 3, 5, 7, 9, 11, 13}, {6, 13}, "f"}});
}

FamilySpec spec_f15() {
  return letter_family(fourier(15), "abcdefgh",
                       {{{1, 4, 7, 10, 13}, {1, 6, 11}, "a"},
                        {{1, 4, 7, 10, 13}, {2, 7, 12}, "b"},
                        {{1, 4, 7, 10, 13}, {3, 8, 13}, "c"},
                        {{1, 4, 7, 10, 13}, {4, 9, 14}, "d"},
                        {{2, 5, 8, 11, 14}, {1, 6, 11}, "e"},
                        {{2, 5, 8, 11, 14}, {2, 7, 12}, "f"},
                        {{2, 5, 8, 11, 14}, {3, 8, 13}, "g"},
                        {{2, 5, 8, 11, 14}, {4, 9, 14}, "h"}});
}

FamilySpec spec_f16() {
  return letter_family(fourier(16), "abcdefghijklmnopr",
                       {{{1, 9}, {1, 9}, "a"},
                        {{1, 9}, {2, 10}, "b"},
                        {{1, 9}, {3, 11}, "c"},
                        {{1, 9}, {4, 12}, "d"},
                        {{1, 9}, {5, 13}, "e"},
                        {{1, 9}, {6, 14}, "f"},
                        {{1, 9}, {7, 15}, "g"},
                        {{2, 10}, {1, 5, 9, 13}, "h"},
                        {{2, 10}, {2, 6, 10, 14}, "i"},
                        {{2, 10}, {3, 7, 11, 15}, "j"},
                        {{3, 11}, {1, 9}, "k"},
                        {{3, 11}, {2, 10}, "l"},
                        {{3, 11}, {3, 11}, "m"},
                        {{3, 11}, {4, 12}, "d"},
                        {{3, 11}, {5, 13}, "e-a+k"},
                        {{3, 11}, {6, 14}, "f-b+l"},
                        {{3, 11}, {7, 15}, "g-c+m"},
                        {{4, 12}, {1, 3, 5, 7, 9, 11, 13, 15}, "n"},
                        {{5, 13}, {1, 9}, "o"},
                        {{5, 13}, {2, 10}, "b"},
                        {{5, 13}, {3, 11}, "c-a+o"},
                        {{5, 13}, {4, 12}, "d"},
                        {{5, 13}, {5, 13}, "e-a+o"},
                        {{5, 13}, {6, 14}, "f"},
                        {{5, 13}, {7, 15}, "g-a+o"},
                        {{6, 14}, {1, 5, 9, 13}, "p"},
                        {{6, 14}, {2, 6, 10, 14}, "i"},
                        {{6, 14}, {3, 7, 11, 15}, "j-h+p"},
                        {{7, 15}, {1, 9}, "r"},
                        {{7, 15}, {2, 10}, "l"},
                        {{7, 15}, {3, 11}, "m-k+r"},
                        {{7, 15}, {4, 12}, "d"},
                        {{7, 15}, {5, 13}, "e-a+r"},
                        {{7, 15}, {6, 14}, "f-b+l"},
                        {{7, 15}, {7, 15}, "g-c+m+r-k"}});
}

// ---------------------------------------------------------------------------
// Two-block compositions F2 (x) {B1, B2} with one free phase diagonal on the
// second block column. Inner family parameters come first, then the diagonal
// phases; a B1 phase shows up in block rows 0 and 1 of block column 0, a B2
// phase in block column 1, and diagonal phase t scales row t of both B2
// blocks.

FamilySpec inner_spec(const std::string& id) {
  if (id == "F6") return spec_f6();
  if (id == "D6") return spec_d6();
  if (id == "P7") return spec_p7();
  if (id == "F7") return {fourier(7), {}, {}};
  if (id == "S6") return {s6_matrix(), {}, {}};
  return {dephase(circulant(circulant_column(id))).dephased, {}, {}};
}

FamilySpec dita_spec(const std::string& b1, const std::string& b2) {
  FamilySpec s1 = inner_spec(b1);
  FamilySpec s2 = inner_spec(b2);
  const int m = s1.base.n();
  const int n = 2 * m;
  HadamardMatrix base =
      dita_compose(fourier(2), {s1.base, s2.base},
                   {DiagonalPhase(m, PhaseValue::turns(Rational(0)))});
  std::vector<RationalMatrix> ps;
  for (const auto& p : s1.patterns) {
    RationalMatrix q(n, n);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        q.at(r, c) = p.at(r, c);
        q.at(m + r, c) = p.at(r, c);
      }
    ps.push_back(std::move(q));
  }
  for (const auto& p : s2.patterns) {
    RationalMatrix q(n, n);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        q.at(r, m + c) = p.at(r, c);
        q.at(m + r, m + c) = p.at(r, c);
      }
    ps.push_back(std::move(q));
  }
  for (int t = 1; t < m; ++t) {
    RationalMatrix q(n, n);
    for (int c = 0; c < m; ++c) {
      q.at(t, m + c) = Rational(1);
      q.at(m + t, m + c) = Rational(1);
    }
    ps.push_back(std::move(q));
  }
  std::vector<std::string> names;
  names.reserve(ps.size());
  for (size_t k = 0; k < ps.size(); ++k)
    names.push_back("a" + std::to_string(k + 1));
  return {std::move(base), std::move(ps), std::move(names)};
}

const std::map<std::string, std::pair<const char*, const char*>>&
combo_blocks() {
  static const std::map<std::string, std::pair<const char*, const char*>> kMap =
      {{"FD12", {"F6", "D6"}},   {"FC12", {"F6", "C6"}},
       {"FS12", {"F6", "S6"}},   {"DD12", {"D6", "D6"}},
       {"DC12", {"D6", "C6"}},   {"DS12", {"D6", "S6"}},
       {"CC12", {"C6", "C6"}},   {"CS12", {"C6", "S6"}},
       {"SS12", {"S6", "S6"}},   {"FP14", {"F7", "P7"}},
       {"FC14A", {"F7", "C7A"}}, {"FC14B", {"F7", "C7B"}},
       {"FC14C", {"F7", "C7C"}}, {"FC14D", {"F7", "C7D"}},
       {"PP14", {"P7", "P7"}},   {"PC14A", {"P7", "C7A"}},
       {"PC14B", {"P7", "C7B"}}, {"PC14C", {"P7", "C7C"}},
       {"PC14D", {"P7", "C7D"}}, {"CC14AA", {"C7A", "C7A"}},
       {"CC14AB", {"C7A", "C7B"}}, {"CC14AC", {"C7A", "C7C"}},
       {"CC14AD", {"C7A", "C7D"}}, {"CC14BB", {"C7B", "C7B"}},
       {"CC14BC", {"C7B", "C7C"}}, {"CC14BD", {"C7B", "C7D"}},
       {"CC14CC", {"C7C", "C7C"}}, {"CC14CD", {"C7C", "C7D"}},
       {"CC14DD", {"C7D", "C7D"}}};
  return kMap;
}

FamilySpec family_spec(const std::string& id) {
  if (id == "F4") return spec_f4();
  if (id == "F6") return spec_f6();
  if (id == "F6T") return transposed(spec_f6());
  if (id == "D6") return spec_d6();
  if (id == "P7") return spec_p7();
  if (id == "F8") return spec_f8();
  if (id == "F9") return spec_f9();
  if (id == "F10") return spec_f10();
  if (id == "F10T") return transposed(spec_f10());
  if (id == "F12A") return spec_f12a();
  if (id == "F12B") return spec_f12b();
  if (id == "F12C") return spec_f12c();
  if (id == "F12D") return spec_f12d();
  if (id == "F12BT") return transposed(spec_f12b());
  if (id == "F12CT") return transposed(spec_f12c());
  if (id == "F12DT") return transposed(spec_f12d());
  if (id == "F14") return spec_f14();
  if (id == "F14T") return transposed(spec_f14());
  if (id == "F15") return spec_f15();
  if (id == "F15T") return transposed(spec_f15());
  if (id == "F16") return spec_f16();
  const auto it = combo_blocks().find(id);
  if (it != combo_blocks().end())
    return dita_spec(it->second.first, it->second.second);
  throw UnknownId(id);
}

HadamardMatrix isolated_matrix(const std::string& id) {
  if (id == "F2") return fourier(2);
  if (id == "F3") return fourier(3);
  if (id == "F5") return fourier(5);
  if (id == "F7") return fourier(7);
  if (id == "F11") return fourier(11);
  if (id == "F13") return fourier(13);
  if (id == "S6") return s6_matrix();
  if (id == "N11") return n11_matrix();
  return dephase(circulant(circulant_column(id))).dephased;
}

// Two-parameter size-13 family. The base phases are sixtieths of a turn; the
// offsets (e, f) shift eight rows in mirrored column bands, with the coupled
// band shifted by e + petrescu_g(f) so that unitarity holds for every (e, f).
HadamardMatrix p13_matrix(const PhaseValue& e, const PhaseValue& f) {
  static const int kExp[13][13] = {
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 30, 20, 40, 10, 25, 55, 45, 15, 32, 8, 44, 56},
      {0, 20, 30, 10, 40, 55, 25, 15, 45, 32, 8, 44, 56},
      {0, 40, 10, 30, 20, 45, 15, 25, 55, 8, 32, 56, 44},
      {0, 10, 40, 20, 30, 15, 45, 55, 25, 8, 32, 56, 44},
      {0, 25, 55, 5, 35, 30, 20, 40, 10, 44, 56, 8, 32},
      {0, 55, 25, 35, 5, 20, 30, 10, 40, 44, 56, 8, 32},
      {0, 5, 35, 25, 55, 40, 10, 30, 20, 56, 44, 32, 8},
      {0, 35, 5, 55, 25, 10, 40, 20, 30, 56, 44, 32, 8},
      {0, 8, 8, 32, 32, 56, 56, 44, 44, 40, 20, 20, 20},
      {0, 32, 32, 8, 8, 44, 44, 56, 56, 20, 40, 20, 20},
      {0, 56, 56, 44, 44, 32, 32, 8, 8, 20, 20, 40, 20},
      {0, 44, 44, 56, 56, 8, 8, 32, 32, 20, 20, 20, 40}};
  // Shift codes over 2x2 row/column bands of rows/cols 1..8:
  // 0 none, 1 +f, 2 +e, 3 +(e+G(f)); negative codes negate.
  static const int kBand[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {-2, -3, 0, -1}, {-3, -2, -1, 0}};
  const PhaseValue eg =
      f.is_zero() ? e
                  : PhaseValue::radians(e.radians_value() +
                                        petrescu_g(f.radians_value()));
  const PhaseValue table[3] = {f, e, eg};
  std::vector<UnimodularEntry> out;
  out.reserve(169);
  for (int i = 0; i < 13; ++i)
    for (int j = 0; j < 13; ++j) {
      PhaseValue p = PhaseValue::turns(Rational(kExp[i][j], 60));
      if (i >= 1 && i <= 8 && j >= 1 && j <= 8) {
        const int code = kBand[(i - 1) / 2][(j - 1) / 2];
        if (code > 0) p = p + table[code - 1];
        if (code < 0) p = p - table[-code - 1];
      }
      out.push_back(UnimodularEntry::from_phase(p));
    }
  return HadamardMatrix(13, std::move(out));
}

std::vector<CatalogueEntry> make_list() {
  using K = EntryKind;
  std::vector<CatalogueEntry> v;
  auto add = [&v](const char* id, int n, int pc, K k, const char* notes,
                  double tol = -1.0) {
    v.push_back({id, n, pc, k, tol, notes});
  };
  add("F2", 2, 0, K::IsolatedCandidate, "Fourier; defect 0 (isolated)");
  add("F3", 3, 0, K::IsolatedCandidate, "Fourier; defect 0 (isolated)");
  add("F4", 4, 1, K::AffineFamily,
      "one-parameter Fourier family; the only maximal family at this size");
  add("F5", 5, 0, K::IsolatedCandidate, "Fourier; defect 0 (isolated)");
  add("F6", 6, 2, K::AffineFamily,
      "two-parameter Fourier family; F6T is its transpose");
  add("F6T", 6, 2, K::AffineFamily, "transpose of the F6 family");
  add("D6", 6, 1, K::AffineFamily,
      "one-parameter family over fourth roots; transpose is the "
      "parameter-negated member");
  add("C6", 6, 0, K::IsolatedCandidate,
      "circulant over an algebraic unit; defect 4, isolation undecided");
  add("S6", 6, 0, K::IsolatedCandidate,
      "symmetric matrix over cube roots; defect 0 (isolated)");
  add("F7", 7, 0, K::IsolatedCandidate, "Fourier; defect 0 (isolated)");
  add("P7", 7, 1, K::AffineFamily,
      "one-parameter symmetric family over sixth roots");
  add("C7A", 7, 0, K::IsolatedCandidate,
      "circulant; entries 1 and a quadratic unit");
  add("C7B", 7, 0, K::IsolatedCandidate, "conjugate of C7A");
  add("C7C", 7, 0, K::IsolatedCandidate,
      "circulant; phases known to seven digits only", 1e-4);
  add("C7D", 7, 0, K::IsolatedCandidate, "conjugate of C7C", 1e-4);
  add("F8", 8, 5, K::AffineFamily, "five-parameter Fourier family");
  add("F9", 9, 4, K::AffineFamily, "four-parameter Fourier family");
  add("F10", 10, 4, K::AffineFamily,
      "four-parameter Fourier family; F10T is its transpose");
  add("F10T", 10, 4, K::AffineFamily, "transpose of the F10 family");
  add("F11", 11, 0, K::IsolatedCandidate, "Fourier; defect 0 (isolated)");
  add("C11A", 11, 0, K::IsolatedCandidate,
      "circulant; entries 1 and a quadratic unit");
  add("C11B", 11, 0, K::IsolatedCandidate, "conjugate of C11A");
  add("N11", 11, 0, K::IsolatedCandidate,
      "entries are signed powers of a quadratic unit; defect 0 (isolated)");
  add("F12A", 12, 9, K::AffineFamily, "nine-parameter Fourier family");
  add("F12B", 12, 9, K::AffineFamily,
      "nine-parameter Fourier family; F12BT is its transpose");
  add("F12C", 12, 9, K::AffineFamily,
      "nine-parameter Fourier family; F12CT is its transpose");
  add("F12D", 12, 9, K::AffineFamily,
      "nine-parameter Fourier family; F12DT is its transpose");
  add("F12BT", 12, 9, K::AffineFamily, "transpose of the F12B family");
  add("F12CT", 12, 9, K::AffineFamily, "transpose of the F12C family");
  add("F12DT", 12, 9, K::AffineFamily, "transpose of the F12D family");
  add("FD12", 12, 8, K::AffineFamily,
      "block composition of the F6 and D6 families with a free diagonal");
  add("FC12", 12, 7, K::AffineFamily,
      "block composition of the F6 family and C6 with a free diagonal");
  add("FS12", 12, 7, K::AffineFamily,
      "block composition of the F6 family and S6 with a free diagonal");
  add("DD12", 12, 7, K::AffineFamily,
      "block composition of two D6 members with a free diagonal");
  add("DC12", 12, 6, K::AffineFamily,
      "block composition of the D6 family and C6 with a free diagonal");
  add("DS12", 12, 6, K::AffineFamily,
      "block composition of the D6 family and S6 with a free diagonal");
  add("CC12", 12, 5, K::AffineFamily,
      "block composition of two copies of C6 with a free diagonal");
  add("CS12", 12, 5, K::AffineFamily,
      "block composition of C6 and S6 with a free diagonal");
  add("SS12", 12, 5, K::AffineFamily,
      "block composition of two copies of S6 with a free diagonal");
  add("F13", 13, 0, K::IsolatedCandidate, "Fourier; defect 0 (isolated)");
  add("C13A", 13, 0, K::IsolatedCandidate,
      "symmetric circulant from one root of a quartic unit pair");
  add("C13B", 13, 0, K::IsolatedCandidate,
      "symmetric circulant from the companion root");
  add("P13", 13, 2, K::NonlinearFamily,
      "two-parameter nonlinear family; one offset runs through a "
      "transcendental correction");
  add("F14", 14, 6, K::AffineFamily,
      "six-parameter Fourier family; F14T is its transpose");
  add("F14T", 14, 6, K::AffineFamily, "transpose of the F14 family");
  add("FP14", 14, 7, K::AffineFamily,
      "block composition of F7 and the P7 family with a free diagonal");
  add("FC14A", 14, 6, K::AffineFamily,
      "block composition of F7 and C7A with a free diagonal");
  add("FC14B", 14, 6, K::AffineFamily,
      "block composition of F7 and C7B with a free diagonal");
  add("FC14C", 14, 6, K::AffineFamily,
      "block composition of F7 and C7C with a free diagonal", 1e-4);
  add("FC14D", 14, 6, K::AffineFamily,
      "block composition of F7 and C7D with a free diagonal", 1e-4);
  add("PP14", 14, 8, K::AffineFamily,
      "block composition of two P7 members with a free diagonal");
  add("PC14A", 14, 7, K::AffineFamily,
      "block composition of the P7 family and C7A with a free diagonal");
  add("PC14B", 14, 7, K::AffineFamily,
      "block composition of the P7 family and C7B with a free diagonal");
  add("PC14C", 14, 7, K::AffineFamily,
      "block composition of the P7 family and C7C with a free diagonal",
      1e-4);
  add("PC14D", 14, 7, K::AffineFamily,
      "block composition of the P7 family and C7D with a free diagonal",
      1e-4);
  add("CC14AA", 14, 6, K::AffineFamily,
      "block composition of C7A and C7A with a free diagonal");
  add("CC14AB", 14, 6, K::AffineFamily,
      "block composition of C7A and C7B with a free diagonal");
  add("CC14AC", 14, 6, K::AffineFamily,
      "block composition of C7A and C7C with a free diagonal", 1e-4);
  add("CC14AD", 14, 6, K::AffineFamily,
      "block composition of C7A and C7D with a free diagonal", 1e-4);
  add("CC14BB", 14, 6, K::AffineFamily,
      "block composition of C7B and C7B with a free diagonal");
  add("CC14BC", 14, 6, K::AffineFamily,
      "block composition of C7B and C7C with a free diagonal", 1e-4);
  add("CC14BD", 14, 6, K::AffineFamily,
      "block composition of C7B and C7D with a free diagonal", 1e-4);
  add("CC14CC", 14, 6, K::AffineFamily,
      "block composition of C7C and C7C with a free diagonal", 1e-4);
  add("CC14CD", 14, 6, K::AffineFamily,
      "block composition of C7C and C7D with a free diagonal", 1e-4);
  add("CC14DD", 14, 6, K::AffineFamily,
      "block composition of C7D and C7D with a free diagonal", 1e-4);
  add("F15", 15, 8, K::AffineFamily,
      "eight-parameter Fourier family; F15T is its transpose");
  add("F15T", 15, 8, K::AffineFamily, "transpose of the F15 family");
  add("F16", 16, 17, K::AffineFamily, "seventeen-parameter Fourier family");
  return v;
}

const CatalogueEntry* find_entry(const std::string& id) {
  for (const auto& e : catalogue_list())
    if (e.id == id) return &e;
  return nullptr;
}

}  // namespace

const char* entry_kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::IsolatedCandidate: return "isolated";
    case EntryKind::AffineFamily: return "affine";
    case EntryKind::NonlinearFamily: return "nonlinear";
  }
  return "unknown";
}

const std::vector<CatalogueEntry>& catalogue_list() {
  static const std::vector<CatalogueEntry> kList = make_list();
  return kList;
}

bool catalogue_has(const std::string& id) { return find_entry(id) != nullptr; }

const CatalogueEntry& catalogue_entry(const std::string& id) {
  const CatalogueEntry* e = find_entry(id);
  if (!e) throw UnknownId(id);
  return *e;
}

HadamardMatrix fourier(int n) {
  if (n < 1) throw std::invalid_argument("fourier: size must be positive");
  std::vector<std::vector<Rational>> grid(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      grid[i][j] = Rational(static_cast<std::int64_t>(i) * j, n);
  return HadamardMatrix::from_turns(grid, {"F" + std::to_string(n), {}, ""});
}

HadamardMatrix catalogue_get(const std::string& id,
                             const std::vector<double>& params) {
  std::vector<PhaseValue> ps;
  ps.reserve(params.size());
  for (double v : params) ps.push_back(PhaseValue::radians(v));
  return catalogue_get(id, ps);
}

HadamardMatrix catalogue_get(const std::string& id,
                             const std::vector<PhaseValue>& params) {
  // Accept the plain name for the first size-12 Fourier family.
  const CatalogueEntry& e = catalogue_entry(id == "F12" ? "F12A" : id);

  std::vector<PhaseValue> ps = params;
  if (e.kind == EntryKind::IsolatedCandidate) {
    if (!ps.empty())
      throw std::invalid_argument("catalogue entry " + e.id +
                                  " takes no parameters");
  } else if (ps.empty()) {
    ps.assign(e.param_count, PhaseValue::turns(Rational(0)));
  } else if (static_cast<int>(ps.size()) != e.param_count) {
    throw std::invalid_argument(
        "catalogue entry " + e.id + " expects " +
        std::to_string(e.param_count) + " parameters, got " +
        std::to_string(ps.size()));
  }

  MatrixMeta meta{e.id, {}, ""};
  std::optional<HadamardMatrix> m;
  if (e.kind == EntryKind::IsolatedCandidate) {
    m = isolated_matrix(e.id);
  } else if (e.kind == EntryKind::AffineFamily) {
    FamilySpec s = family_spec(e.id);
    for (int k = 0; k < e.param_count; ++k)
      meta.params.emplace_back(s.names[k], ps[k].radians_value());
    m = AffineFamily(std::move(s.base), std::move(s.patterns),
                     std::move(s.names))
            .eval(ps);
  } else {
    meta.params.emplace_back("e", ps[0].radians_value());
    meta.params.emplace_back("f", ps[1].radians_value());
    m = p13_matrix(ps[0], ps[1]);
  }
  HadamardMatrix out = m->with_meta(std::move(meta));

  const HadamardReport rep = is_hadamard(out, e.validation_tol);
  if (!rep.pass)
    throw std::runtime_error("catalogue entry " + e.id +
                             " failed validation (max Gram deviation " +
                             std::to_string(rep.max_gram_deviation) + ")");
  return out;
}

AffineFamily catalogue_family(const std::string& id) {
  const CatalogueEntry& e = catalogue_entry(id);
  if (e.kind != EntryKind::AffineFamily)
    throw std::invalid_argument("catalogue entry " + id +
                                " is not an affine family");
  FamilySpec s = family_spec(e.id);
  s.base = s.base.with_meta({e.id, {}, ""});
  return AffineFamily(std::move(s.base), std::move(s.patterns),
                      std::move(s.names));
}

HadamardMatrix circulant_form(const std::string& id) {
  const CatalogueEntry& e = catalogue_entry(id);
  HadamardMatrix m = circulant(circulant_column(e.id));
  return m.with_meta({e.id + " (circulant)", {}, ""});
}

double petrescu_g(double f) {
  const std::complex<double> z(
      -std::cos(f) / 2.0,
      (std::sqrt(2.0) / 4.0) * std::sqrt(7.0 - std::cos(2.0 * f)));
  return std::arg(z) - kTau / 3.0;
}

}  // namespace chm
