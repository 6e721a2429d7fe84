#include "chm/construct.hpp"

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace chm {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

UnimodularEntry phase_shifted(const UnimodularEntry& e, const PhaseValue& p) {
  if (p.is_zero()) return e;
  return UnimodularEntry::from_phase(e.phase() + p);
}

// Entry negation as an exact half-turn phase shift.
UnimodularEntry negated(const UnimodularEntry& e) {
  return phase_shifted(e, PhaseValue::turns(Rational(1, 2)));
}

void check_leading_zero(const DiagonalPhase& e, const std::string& name) {
  require(!e.empty() && e.front().is_zero(),
          name + ": leading diagonal phase must be 0");
}

}  // namespace

HadamardMatrix tensor(const HadamardMatrix& a, const HadamardMatrix& b) {
  const int na = a.n(), nb = b.n(), n = na * nb;
  std::vector<UnimodularEntry> e(static_cast<size_t>(n) * n);
  for (int ia = 0; ia < na; ++ia)
    for (int ib = 0; ib < nb; ++ib)
      for (int ja = 0; ja < na; ++ja)
        for (int jb = 0; jb < nb; ++jb)
          e[static_cast<size_t>(ia * nb + ib) * n + (ja * nb + jb)] =
              a.at(ia, ja) * b.at(ib, jb);
  MatrixMeta meta;
  meta.name = a.meta().name.empty() || b.meta().name.empty()
                  ? std::string()
                  : a.meta().name + " (x) " + b.meta().name;
  return HadamardMatrix(n, std::move(e), std::move(meta));
}

HadamardMatrix dita_compose(const HadamardMatrix& a,
                            const std::vector<HadamardMatrix>& bs,
                            const std::vector<DiagonalPhase>& es) {
  const int k = a.n();
  require(static_cast<int>(bs.size()) == k,
          "dita_compose: need one inner matrix per column of the outer one");
  require(static_cast<int>(es.size()) == k - 1,
          "dita_compose: need K-1 phase diagonals (E_2..E_K)");
  const int m = bs[0].n();
  for (const auto& b : bs)
    require(b.n() == m, "dita_compose: inner matrices must share one size");
  for (int t = 0; t < k - 1; ++t) {
    require(static_cast<int>(es[t].size()) == m,
            "dita_compose: phase diagonal size must match the inner size");
    check_leading_zero(es[t], "dita_compose");
  }

  const int n = k * m;
  std::vector<UnimodularEntry> e(static_cast<size_t>(n) * n);
  for (int bj = 0; bj < k; ++bj)
    for (int bk = 0; bk < k; ++bk)
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          UnimodularEntry v = a.at(bj, bk) * bs[bk].at(r, c);
          if (bk > 0) v = phase_shifted(v, es[bk - 1][r]);
          e[static_cast<size_t>(bj * m + r) * n + (bk * m + c)] = v;
        }
  return HadamardMatrix(n, std::move(e));
}

long dita_parameter_count(long a, const std::vector<long>& bs, long k, long m) {
  long total = a + (k - 1) * (m - 1);
  for (long b : bs) total += b;
  return total;
}

HadamardMatrix doubled(const HadamardMatrix& a, const HadamardMatrix& b,
                       const DiagonalPhase& e) {
  const int m = a.n();
  require(b.n() == m, "doubled: size mismatch");
  require(static_cast<int>(e.size()) == m, "doubled: diagonal size mismatch");
  check_leading_zero(e, "doubled");

  const int n = 2 * m;
  std::vector<UnimodularEntry> out(static_cast<size_t>(n) * n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      const UnimodularEntry eb = phase_shifted(b.at(r, c), e[r]);
      out[static_cast<size_t>(r) * n + c] = a.at(r, c);
      out[static_cast<size_t>(r) * n + (m + c)] = eb;
      out[static_cast<size_t>(m + r) * n + c] = a.at(r, c);
      out[static_cast<size_t>(m + r) * n + (m + c)] = negated(eb);
    }
  return HadamardMatrix(n, std::move(out));
}

HadamardMatrix quadrupled(const HadamardMatrix& a, const HadamardMatrix& b,
                          const HadamardMatrix& c, const HadamardMatrix& d,
                          const DiagonalPhase& e1, const DiagonalPhase& e2,
                          const DiagonalPhase& e3) {
  const int m = a.n();
  require(b.n() == m && c.n() == m && d.n() == m, "quadrupled: size mismatch");
  require(static_cast<int>(e1.size()) == m && static_cast<int>(e2.size()) == m &&
              static_cast<int>(e3.size()) == m,
          "quadrupled: diagonal size mismatch");
  check_leading_zero(e1, "quadrupled");
  check_leading_zero(e2, "quadrupled");
  check_leading_zero(e3, "quadrupled");

  // Sign grid over the block columns [A, E1 B, E2 C, E3 D].
  static const int kSigns[4][4] = {
      {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, +1, -1, -1}, {+1, -1, -1, +1}};

  const int n = 4 * m;
  std::vector<UnimodularEntry> out(static_cast<size_t>(n) * n);
  for (int br = 0; br < 4; ++br)
    for (int r = 0; r < m; ++r)
      for (int c2 = 0; c2 < m; ++c2) {
        const UnimodularEntry blocks[4] = {
            a.at(r, c2), phase_shifted(b.at(r, c2), e1[r]),
            phase_shifted(c.at(r, c2), e2[r]), phase_shifted(d.at(r, c2), e3[r])};
        for (int bc = 0; bc < 4; ++bc) {
          UnimodularEntry v = blocks[bc];
          if (kSigns[br][bc] < 0) v = negated(v);
          out[static_cast<size_t>(br * m + r) * n + (bc * m + c2)] = v;
        }
      }
  return HadamardMatrix(n, std::move(out));
}

HadamardMatrix affine_eval(const AffineFamily& f,
                           const std::vector<double>& params) {
  return f.eval(params);
}

HadamardMatrix affine_eval(const AffineFamily& f,
                           const std::vector<PhaseValue>& params) {
  return f.eval(params);
}

std::vector<std::complex<double>> chains(const HadamardMatrix& m, int i, int j) {
  require(i >= 0 && j >= 0 && i < m.n() && j < m.n() && i < j,
          "chains: need row indices i < j inside the matrix");
  std::vector<std::complex<double>> out(m.n());
  for (int k = 0; k < m.n(); ++k)
    out[k] = m.value(i, k) * std::conj(m.value(j, k));
  return out;
}

int SubchainPattern::pair_index(int n, int i, int j) {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

SubchainPattern SubchainPattern::trivial(int n) {
  SubchainPattern p;
  p.n = n;
  std::vector<int> all(n);
  for (int k = 0; k < n; ++k) all[k] = k;
  p.blocks.assign(pair_count(n), {all});
  return p;
}

}  // namespace chm
