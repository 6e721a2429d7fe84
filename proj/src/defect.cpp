#include <gmpxx.h>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>

#include "chm/analysis.hpp"

// Defect computation. Two independent engines:
//
//  * SVD on the literal real constraint system (always runs). Numerical rank
//    with threshold tau = scale * sigma_max * max(rows, cols).
//
//  * Exact cyclotomic path when every phase is a rational turn p/q. The
//    orthogonality coefficients are then q-th roots of unity, so each complex
//    constraint row lives over Z[zeta_q]. Including each row together with
//    its conjugate makes the system conjugation-stable, and for such systems
//    the complex kernel dimension equals the real kernel dimension of the
//    split Re/Im system; field extension does not change rank, so the rank
//    over Q(zeta_q) is the wanted one. That rank is bounded below by the rank
//    modulo any prime p ≡ 1 (mod q) (zeta specializes to an exact primitive
//    root mod p), which bounds the defect from above. The matching lower
//    bound comes from lifting the mod-p reduced-echelon kernel basis through
//    CRT + rational reconstruction and re-verifying every lifted vector in
//    exact Z[zeta_q] arithmetic. When the bounds meet the defect is certified.

namespace chm {

namespace {

// ---------------------------------------------------------------------------
// Cyclotomic polynomial and power reduction table.

// Coefficients of Phi_q, ascending degree. Computed by dividing x^q - 1 by
// the cyclotomic polynomials of the proper divisors; all divisions exact.
std::vector<long> cyclotomic_poly(int q) {
  std::vector<std::vector<long>> memo(q + 1);
  for (int d = 1; d <= q; ++d) {
    if (q % d != 0) continue;
    std::vector<long> num(d + 1, 0);  // x^d - 1
    num[0] = -1;
    num[d] = 1;
    for (int e = 1; e < d; ++e) {
      if (d % e != 0) continue;
      const std::vector<long>& div = memo[e];
      // Exact descending long division of num by div.
      std::vector<long> quot(num.size() - div.size() + 1, 0);
      std::vector<long> rem = num;
      for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
        const long c = rem[k + div.size() - 1] / div.back();
        quot[k] = c;
        if (c == 0) continue;
        for (size_t t = 0; t < div.size(); ++t) rem[k + t] -= c * div[t];
      }
      num = quot;
    }
    memo[d] = num;
  }
  return memo[q];
}

// x^e mod Phi_q for e in [0, q), as small integer coefficient vectors of
// length deg(Phi_q).
std::vector<std::vector<long>> zeta_power_table(const std::vector<long>& phi,
                                                int q) {
  const int deg = static_cast<int>(phi.size()) - 1;
  std::vector<std::vector<long>> table(q, std::vector<long>(deg, 0));
  std::vector<long> cur(deg, 0);
  cur[0] = 1;
  for (int e = 0; e < q; ++e) {
    table[e] = cur;
    // Multiply by x, reduce the overflowing coefficient by phi (monic).
    long carry = cur[deg - 1];
    for (int k = deg - 1; k > 0; --k) cur[k] = cur[k - 1];
    cur[0] = 0;
    if (carry != 0) {
      for (int k = 0; k < deg; ++k) cur[k] -= carry * phi[k];
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Modular arithmetic (p < 2^31 so products fit in uint64).

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mul = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % n);
  };
  auto pw = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= n;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  };
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pw(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct ModField {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> zeta_pow;  // zeta^e mod p, e in [0, q)
};

// k-th prime p ≡ 1 (mod q) below 2^31, largest first, with a verified
// primitive q-th root of unity.
std::optional<ModField> make_field(int q, int index) {
  std::vector<long> prime_divs;
  long rest = q;
  for (long r = 2; r * r <= rest; ++r) {
    if (rest % r == 0) {
      prime_divs.push_back(r);
      while (rest % r == 0) rest /= r;
    }
  }
  if (rest > 1) prime_divs.push_back(rest);
  int found = 0;
  for (std::uint64_t k = ((1ull << 31) - 2) / q;; --k) {
    if (k == 0) return std::nullopt;
    const std::uint64_t p = k * q + 1;
    if (!is_prime_u64(p)) continue;
    std::uint64_t omega = 0;
    for (std::uint64_t g = 2; g < 200; ++g) {
      const std::uint64_t w = pow_mod(g, (p - 1) / q, p);
      bool primitive = w != 0;
      for (long r : prime_divs) {
        if (pow_mod(w, q / r, p) == 1) {
          primitive = false;
          break;
        }
      }
      if (q == 1) primitive = true;
      if (primitive) {
        omega = q == 1 ? 1 : w;
        break;
      }
    }
    if (omega == 0) continue;
    if (found++ < index) continue;
    ModField f;
    f.p = p;
    f.zeta_pow.resize(q);
    std::uint64_t cur = 1;
    for (int e = 0; e < q; ++e) {
      f.zeta_pow[e] = cur;
      cur = cur * omega % p;
    }
    return f;
  }
}

// ---------------------------------------------------------------------------
// Symbolic constraint rows over Z[zeta_q], on the (n-1)^2 variables that
// survive first-row/column pinning.

struct Term {
  int var;
  int exponent;  // zeta^exponent
  int sign;      // +1 / -1
};

struct SymbolicSystem {
  int q = 0;
  int nvars = 0;
  std::vector<std::vector<Term>> rows;       // primary + conjugate rows
  std::vector<std::vector<Term>> primaries;  // one per pair (i<j)
};

SymbolicSystem build_symbolic(const HadamardMatrix& m) {
  const int n = m.n();
  SymbolicSystem sys;
  long q = 1;
  std::vector<long> expo(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      q = std::lcm(q, m.at(i, j).phase().turns_value().den());
  sys.q = static_cast<int>(q);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational& t = m.at(i, j).phase().turns_value();
      expo[static_cast<size_t>(i) * n + j] = t.num() * (q / t.den());
    }
  }
  sys.nvars = (n - 1) * (n - 1);
  auto var = [n](int i, int k) { return (i - 1) * (n - 1) + (k - 1); };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<Term> row;
      for (int k = 1; k < n; ++k) {
        const long e =
            ((expo[static_cast<size_t>(i) * n + k] -
              expo[static_cast<size_t>(j) * n + k]) % q + q) % q;
        if (i >= 1) row.push_back({var(i, k), static_cast<int>(e), +1});
        row.push_back({var(j, k), static_cast<int>(e), -1});
      }
      std::vector<Term> conj_row;
      for (const Term& t : row) {
        conj_row.push_back({t.var, (sys.q - t.exponent) % sys.q, t.sign});
      }
      sys.primaries.push_back(row);
      sys.rows.push_back(std::move(row));
      sys.rows.push_back(std::move(conj_row));
    }
  }
  return sys;
}

// Gaussian elimination mod p with left-to-right pivot columns. Returns the
// pivot column list; on exit rows hold an echelon basis.
std::vector<int> eliminate_mod(std::vector<std::vector<std::uint64_t>>& rows,
                               int nvars, std::uint64_t p) {
  std::vector<int> pivots;
  size_t next = 0;
  for (int col = 0; col < nvars && next < rows.size(); ++col) {
    size_t found = SIZE_MAX;
    for (size_t r = next; r < rows.size(); ++r) {
      if (rows[r][col] != 0) {
        found = r;
        break;
      }
    }
    if (found == SIZE_MAX) continue;
    std::swap(rows[next], rows[found]);
    const std::uint64_t inv = pow_mod(rows[next][col], p - 2, p);
    for (int c = col; c < nvars; ++c) rows[next][c] = rows[next][c] * inv % p;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == next || rows[r][col] == 0) continue;
      const std::uint64_t f = p - rows[r][col];
      for (int c = col; c < nvars; ++c)
        rows[r][c] = (rows[r][c] + f * rows[next][c]) % p;
    }
    pivots.push_back(col);
    ++next;
  }
  rows.resize(next);
  return pivots;
}

struct ModKernel {
  std::uint64_t p;
  std::vector<int> pivots;
  std::vector<int> free_cols;
  // kernel[v][c]: value of basis vector v (unit at free_cols[v]) at column c.
  std::vector<std::vector<std::uint64_t>> kernel;
};

ModKernel kernel_mod(const SymbolicSystem& sys, const ModField& f) {
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(sys.rows.size());
  for (const auto& srow : sys.rows) {
    std::vector<std::uint64_t> r(sys.nvars, 0);
    for (const Term& t : srow) {
      const std::uint64_t v = f.zeta_pow[t.exponent];
      r[t.var] = t.sign > 0 ? (r[t.var] + v) % f.p : (r[t.var] + f.p - v) % f.p;
    }
    rows.push_back(std::move(r));
  }
  ModKernel k;
  k.p = f.p;
  k.pivots = eliminate_mod(rows, sys.nvars, f.p);
  std::vector<bool> is_pivot(sys.nvars, false);
  for (int c : k.pivots) is_pivot[c] = true;
  for (int c = 0; c < sys.nvars; ++c)
    if (!is_pivot[c]) k.free_cols.push_back(c);
  for (int fc : k.free_cols) {
    std::vector<std::uint64_t> v(sys.nvars, 0);
    v[fc] = 1;
    for (size_t t = 0; t < k.pivots.size(); ++t) {
      const std::uint64_t x = rows[t][fc];
      if (x != 0) v[k.pivots[t]] = f.p - x;
    }
    k.kernel.push_back(std::move(v));
  }
  return k;
}

// ---------------------------------------------------------------------------
// CRT + rational reconstruction.

bool rational_reconstruct(const mpz_class& residue, const mpz_class& modulus,
                          mpq_class* out) {
  mpz_class bound;
  mpz_fdiv_q_ui(bound.get_mpz_t(), modulus.get_mpz_t(), 2);
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  mpz_class r0 = modulus, r1 = residue % modulus;
  if (r1 < 0) r1 += modulus;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class qq = r0 / r1;
    mpz_class r2 = r0 - qq * r1;
    mpz_class t2 = t0 - qq * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return false;
  mpz_class num = r1, den = t1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return false;  // uniqueness needs coprime num/den
  mpz_class check;
  mpz_gcd(check.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  if (check != 1) return false;
  *out = mpq_class(num) / mpq_class(den);
  return true;
}

// Exact check that L(w) = 0 in Z[zeta_q] for every primary row, where w is
// the kernel candidate scaled to integers.
bool verify_kernel_vector(const SymbolicSystem& sys,
                          const std::vector<std::vector<long>>& zpow,
                          const std::vector<mpq_class>& vec) {
  mpz_class scale = 1;
  for (const auto& x : vec)
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> w(vec.size());
  for (size_t i = 0; i < vec.size(); ++i) {
    w[i] = mpz_class(vec[i].get_num() * (scale / vec[i].get_den()));
  }
  const size_t deg = zpow.empty() ? 1 : zpow[0].size();
  std::vector<mpz_class> acc(deg);
  for (const auto& row : sys.primaries) {
    for (auto& a : acc) a = 0;
    for (const Term& t : row) {
      if (w[t.var] == 0) continue;
      const std::vector<long>& pw = zpow[t.exponent];
      for (size_t c = 0; c < deg; ++c) {
        if (pw[c] == 0) continue;
        if (t.sign > 0) {
          acc[c] += w[t.var] * pw[c];
        } else {
          acc[c] -= w[t.var] * pw[c];
        }
      }
    }
    for (const auto& a : acc)
      if (a != 0) return false;
  }
  return true;
}

struct ExactDefect {
  int rank = 0;
  int defect = 0;
  std::vector<std::vector<mpq_class>> kernel;  // over the reduced variables
};

std::optional<ExactDefect> exact_defect(const HadamardMatrix& m) {
  if (!m.all_exact()) return std::nullopt;
  const int n = m.n();
  if (n == 1) return ExactDefect{0, 0, {}};
  SymbolicSystem sys = build_symbolic(m);
  if (sys.q > 360) return std::nullopt;  // keep reduction coefficients small
  const std::vector<long> phi = cyclotomic_poly(sys.q);
  const std::vector<std::vector<long>> zpow = zeta_power_table(phi, sys.q);

  // Reference kernel structure from the first prime; extra primes must agree
  // on the pivot set (disagreement marks an unlucky prime, which is skipped).
  constexpr int kMaxPrimes = 48;
  std::optional<ModKernel> ref;
  std::vector<std::vector<mpz_class>> residues;  // per vector, per coordinate
  mpz_class modulus = 1;
  int used_primes = 0;
  for (int idx = 0; idx < kMaxPrimes; ++idx) {
    std::optional<ModField> f = make_field(sys.q, idx);
    if (!f) break;
    ModKernel k = kernel_mod(sys, *f);
    if (!ref || k.pivots.size() > ref->pivots.size()) {
      // Higher rank: every previous prime was unlucky; restart accumulation.
      ref = k;
      residues.assign(k.kernel.size(),
                      std::vector<mpz_class>(sys.nvars, mpz_class(0)));
      modulus = 1;
      used_primes = 0;
    } else if (k.pivots != ref->pivots) {
      continue;  // unlucky prime
    }
    const mpz_class p(static_cast<unsigned long>(k.p));
    for (size_t v = 0; v < k.kernel.size(); ++v) {
      for (int c = 0; c < sys.nvars; ++c) {
        // CRT combine with the accumulated modulus.
        mpz_class cur = residues[v][c];
        mpz_class diff = mpz_class(static_cast<unsigned long>(k.kernel[v][c])) - cur;
        mpz_class minv;
        if (modulus == 1) {
          residues[v][c] = mpz_class(static_cast<unsigned long>(k.kernel[v][c]));
          continue;
        }
        if (mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t()) == 0)
          return std::nullopt;
        mpz_class t = (diff * minv) % p;
        if (t < 0) t += p;
        residues[v][c] = cur + modulus * t;
      }
    }
    modulus *= p;
    ++used_primes;
    if (used_primes < 2) continue;  // need some headroom before reconstructing

    bool all_ok = true;
    std::vector<std::vector<mpq_class>> kernel(ref->kernel.size());
    for (size_t v = 0; v < ref->kernel.size() && all_ok; ++v) {
      kernel[v].resize(sys.nvars);
      for (int c = 0; c < sys.nvars; ++c) {
        if (!rational_reconstruct(residues[v][c], modulus, &kernel[v][c])) {
          all_ok = false;
          break;
        }
      }
    }
    if (!all_ok) continue;
    for (size_t v = 0; v < kernel.size() && all_ok; ++v) {
      if (!verify_kernel_vector(sys, zpow, kernel[v])) all_ok = false;
    }
    if (!all_ok) continue;
    // rank >= pivot count (mod-p lower bound) and the verified vectors give
    // nullity >= free count, so both are tight.
    ExactDefect out;
    out.rank = static_cast<int>(ref->pivots.size());
    out.defect = sys.nvars - out.rank;
    out.kernel = std::move(kernel);
    return out;
  }
  return std::nullopt;
}

}  // namespace

DefectReport defect(const HadamardMatrix& m, const DefectOptions& opts) {
  const HadamardReport h = is_hadamard(m);
  if (!h.pass) {
    throw std::invalid_argument(
        "defect: input is not a Hadamard matrix (gram deviation " +
        std::to_string(h.max_gram_deviation) + ")");
  }
  const int n = m.n();
  DefectReport rep;
  rep.n = n;

  // SVD path on the real system.
  const std::vector<std::vector<double>> rows = defect_system_rows(m, true);
  const int nrows = static_cast<int>(rows.size());
  const int ncols = n * n;
  Eigen::MatrixXd a(nrows, ncols);
  for (int r = 0; r < nrows; ++r)
    for (int c = 0; c < ncols; ++c) a(r, c) = rows[r][c];
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double tau = opts.svd_threshold_scale *
                     (sigma.size() ? sigma(0) : 0.0) * std::max(nrows, ncols);
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma(i) > tau) ++rank;
  rep.svd_defect = ncols - rank;

  std::optional<ExactDefect> ex;
  if (!opts.force_svd_only) ex = exact_defect(m);
  if (ex) {
    rep.exact = true;
    rep.exact_defect = ex->defect;
    rep.defect = ex->defect;
    rep.rank = ex->rank + 2 * n - 1;  // add back the pinned variables
    if (opts.want_kernel) {
      // Embed the reduced-variable kernel into full n*n coordinates.
      for (const auto& kv : ex->kernel) {
        std::vector<double> full(static_cast<size_t>(n) * n, 0.0);
        for (int i = 1; i < n; ++i)
          for (int k = 1; k < n; ++k)
            full[static_cast<size_t>(i) * n + k] =
                kv[(i - 1) * (n - 1) + (k - 1)].get_d();
        rep.kernel.push_back(std::move(full));
      }
    }
  } else {
    rep.exact = false;
    rep.exact_defect = -1;
    rep.defect = rep.svd_defect;
    rep.rank = rank;
    if (opts.want_kernel) {
      const auto& v = svd.matrixV();
      for (int c = rank; c < v.cols(); ++c) {
        std::vector<double> full(static_cast<size_t>(n) * n);
        for (int r = 0; r < v.rows(); ++r) full[r] = v(r, c);
        rep.kernel.push_back(std::move(full));
      }
    }
  }
  return rep;
}

}  // namespace chm
