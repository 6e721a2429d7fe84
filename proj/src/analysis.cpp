#include "chm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace chm {

namespace {

double default_gram_tol(int n, double tol) {
  return tol >= 0 ? tol : 1e-10 * n;
}

}  // namespace

HadamardReport is_hadamard(const HadamardMatrix& m, double tol,
                           double modulus_tol) {
  const int n = m.n();
  HadamardReport rep;
  rep.n = n;
  rep.tol = default_gram_tol(n, tol);
  rep.modulus_tol = modulus_tol;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rep.max_modulus_deviation =
          std::max(rep.max_modulus_deviation, m.at(i, j).modulus_error());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::complex<double> dot = 0.0;
      for (int k = 0; k < n; ++k) dot += m.value(i, k) * std::conj(m.value(j, k));
      if (i == j) dot -= static_cast<double>(n);
      const double dev = std::abs(dot);
      if (dev > rep.max_gram_deviation) {
        rep.max_gram_deviation = dev;
        rep.worst_row = i;
        rep.worst_col = j;
      }
    }
  }
  rep.pass = rep.max_gram_deviation <= rep.tol &&
             rep.max_modulus_deviation <= rep.modulus_tol;
  return rep;
}

DephaseResult dephase(const HadamardMatrix& m) {
  const int n = m.n();
  DiagonalPhase dr(n), dc(n);
  for (int i = 0; i < n; ++i) dr[i] = -m.at(i, 0).phase();
  dc[0] = PhaseValue::turns(Rational(0));
  for (int j = 1; j < n; ++j) dc[j] = m.at(0, 0).phase() - m.at(0, j).phase();
  std::vector<UnimodularEntry> e;
  e.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Grouped as differences so the first row and column cancel to an
      // exact zero phase even on the float path.
      const PhaseValue p = (m.at(i, j).phase() - m.at(i, 0).phase()) +
                           (m.at(0, 0).phase() - m.at(0, j).phase());
      e.push_back(UnimodularEntry::from_phase(p));
    }
  }
  MatrixMeta meta = m.meta();
  HadamardMatrix h(n, std::move(e), std::move(meta));
  return {std::move(dr), std::move(dc), std::move(h)};
}

LogPhaseMatrix log_phases(const HadamardMatrix& m) {
  const int n = m.n();
  LogPhaseMatrix lp;
  lp.n = n;
  lp.radians.resize(static_cast<size_t>(n) * n);
  lp.exact = m.all_exact();
  if (lp.exact) lp.turns.resize(static_cast<size_t>(n) * n);
  long q = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const PhaseValue p = m.at(i, j).phase();
      lp.radians[static_cast<size_t>(i) * n + j] = p.radians_value();
      if (lp.exact) {
        const Rational& t = p.turns_value();
        lp.turns[static_cast<size_t>(i) * n + j] = t;
        q = std::lcm(q, t.den());
      }
    }
  }
  if (lp.exact) lp.butson_q = static_cast<int>(q);
  return lp;
}

std::vector<long> LogPhaseMatrix::scaled_exponents(int q) const {
  if (!exact) throw std::logic_error("matrix has non-rational phases");
  if (!butson_q || q % *butson_q != 0) {
    throw std::invalid_argument("q is not a multiple of the phase denominator");
  }
  std::vector<long> out(turns.size());
  for (size_t k = 0; k < turns.size(); ++k) {
    out[k] = turns[k].num() * (q / turns[k].den());
  }
  return out;
}

std::optional<long> fourier_defect_formula(long n) {
  if (n < 2) return std::nullopt;
  std::vector<std::pair<long, long>> factors;  // (prime, multiplicity)
  long rest = n;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      long k = 0;
      while (rest % p == 0) {
        rest /= p;
        ++k;
      }
      factors.emplace_back(p, k);
    }
  }
  if (rest > 1) factors.emplace_back(rest, 1);
  if (factors.size() == 1) {
    const long p = factors[0].first;
    const long k = factors[0].second;
    if (k == 1) return 0;
    long pw = 1;
    for (long i = 1; i < k; ++i) pw *= p;  // p^(k-1)
    return pw * (k * (p - 1) - p) + 1;
  }
  if (factors.size() == 2 && factors[0].second == 1 && factors[1].second == 1) {
    return 2 * (factors[0].first - 1) * (factors[1].first - 1);
  }
  return std::nullopt;
}

IsolationCertificate is_isolated_certificate(const HadamardMatrix& m) {
  const DefectReport rep = defect(m);
  IsolationCertificate cert;
  cert.defect = rep.defect;
  cert.certified_exact = rep.exact;
  cert.status = rep.defect == 0 ? IsolationStatus::Isolated
                                : IsolationStatus::Unknown;
  return cert;
}

namespace {

struct GridKey {
  long long re, im;
  bool operator<(const GridKey& o) const {
    return re != o.re ? re < o.re : im < o.im;
  }
};

}  // namespace

InvariantSet haagerup_invariants(const HadamardMatrix& m, double cluster_tol) {
  const int n = m.n();
  std::map<GridKey, long> counts;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        const std::complex<double> left =
            m.value(i, j) * std::conj(m.value(k, j));
        for (int l = 0; l < n; ++l) {
          const std::complex<double> v =
              left * m.value(k, l) * std::conj(m.value(i, l));
          GridKey key{std::llround(v.real() / cluster_tol),
                      std::llround(v.imag() / cluster_tol)};
          ++counts[key];
        }
      }
    }
  }
  // Merge grid cells closer than 2*cluster_tol (values straddling a cell
  // boundary round apart); union-find over the handful of distinct cells.
  std::vector<GridKey> keys;
  std::vector<long> cnt;
  for (const auto& [k, c] : counts) {
    keys.push_back(k);
    cnt.push_back(c);
  }
  const size_t k = keys.size();
  std::vector<size_t> parent(k);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (size_t a = 0; a < k; ++a) {
    for (size_t b = a + 1; b < k; ++b) {
      if (keys[b].re - keys[a].re > 2) break;  // keys sorted by re
      const double dre = static_cast<double>(keys[a].re - keys[b].re);
      const double dim = static_cast<double>(keys[a].im - keys[b].im);
      if (std::hypot(dre, dim) < 2.0) {
        size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::map<size_t, std::pair<GridKey, long>> clusters;  // root -> (min key, count)
  for (size_t a = 0; a < k; ++a) {
    const size_t r = find(a);
    auto it = clusters.find(r);
    if (it == clusters.end()) {
      clusters[r] = {keys[a], cnt[a]};
    } else {
      it->second.second += cnt[a];
      if (keys[a] < it->second.first) it->second.first = keys[a];
    }
  }
  InvariantSet set;
  set.cluster_tol = cluster_tol;
  for (const auto& [root, rep] : clusters) {
    const std::complex<double> v(rep.first.re * cluster_tol,
                                 rep.first.im * cluster_tol);
    set.values.push_back(v);
    set.multiset.emplace_back(v, rep.second);
  }
  std::sort(set.values.begin(), set.values.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              return a.real() != b.real() ? a.real() < b.real()
                                          : a.imag() < b.imag();
            });
  std::sort(set.multiset.begin(), set.multiset.end(),
            [](const auto& a, const auto& b) {
              return a.first.real() != b.first.real()
                         ? a.first.real() < b.first.real()
                         : a.first.imag() < b.first.imag();
            });
  return set;
}

bool invariant_sets_match(const InvariantSet& a, const InvariantSet& b) {
  const double tol = 2.0 * std::max(a.cluster_tol, b.cluster_tol);
  auto covered = [tol](const std::vector<std::complex<double>>& xs,
                       const std::vector<std::complex<double>>& ys) {
    for (const auto& x : xs) {
      bool hit = false;
      for (const auto& y : ys) {
        if (std::abs(x - y) <= tol) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    return true;
  };
  return covered(a.values, b.values) && covered(b.values, a.values);
}

InvariantVerdict inequivalent_by_invariants(const HadamardMatrix& a,
                                            const HadamardMatrix& b) {
  if (a.n() != b.n()) return InvariantVerdict::Inequivalent;
  return invariant_sets_match(haagerup_invariants(a), haagerup_invariants(b))
             ? InvariantVerdict::Inconclusive
             : InvariantVerdict::Inequivalent;
}

bool is_unbiased_pair(const HadamardMatrix& a, const HadamardMatrix& b,
                      double tol) {
  if (a.n() != b.n()) throw std::invalid_argument("size mismatch");
  const int n = a.n();
  const double t = default_gram_tol(n, tol);
  const double root = std::sqrt(static_cast<double>(n));
  // K = A^dagger * B / sqrt(n); unbiased iff K is again Hadamard. The Gram
  // part of the check is automatic for exact inputs; the unimodularity of K
  // is the substantive condition.
  std::vector<std::vector<std::complex<double>>> kmat(
      n, std::vector<std::complex<double>>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::complex<double> s = 0.0;
      for (int k = 0; k < n; ++k) s += std::conj(a.value(k, i)) * b.value(k, j);
      kmat[i][j] = s / root;
    }
  }
  const HadamardMatrix k = HadamardMatrix::from_values(kmat);
  return is_hadamard(k, t, std::max(t, kUnimodularTol)).pass;
}

std::optional<CirculantDecomposition> circulant_decompose(
    const HadamardMatrix& m, double tol) {
  const int n = m.n();
  std::vector<UnimodularEntry> x;
  x.reserve(n);
  for (int i = 0; i < n; ++i) x.push_back(m.at(i, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int s = ((i - j) % n + n) % n;
      if (std::abs(m.value(i, j) - x[s].value()) > tol) return std::nullopt;
    }
  }
  std::vector<int> image(n);
  image[0] = 0;
  for (int j = 1; j < n; ++j) image[j] = n - j;
  return CirculantDecomposition{std::move(x), PermutationVector(std::move(image))};
}

std::vector<std::vector<double>> defect_system_rows(const HadamardMatrix& m,
                                                    bool include_dephasing) {
  const int n = m.n();
  const int nv = n * n;
  std::vector<std::vector<double>> rows;
  auto var = [n](int i, int j) { return i * n + j; };
  if (include_dephasing) {
    for (int j = 1; j < n; ++j) {
      std::vector<double> r(nv, 0.0);
      r[var(0, j)] = 1.0;
      rows.push_back(std::move(r));
    }
    for (int i = 0; i < n; ++i) {
      std::vector<double> r(nv, 0.0);
      r[var(i, 0)] = 1.0;
      rows.push_back(std::move(r));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<double> re(nv, 0.0), im(nv, 0.0);
      for (int k = 0; k < n; ++k) {
        const std::complex<double> c = m.value(i, k) * std::conj(m.value(j, k));
        re[var(i, k)] += c.real();
        re[var(j, k)] -= c.real();
        im[var(i, k)] += c.imag();
        im[var(j, k)] -= c.imag();
      }
      rows.push_back(std::move(re));
      rows.push_back(std::move(im));
    }
  }
  return rows;
}

}  // namespace chm
