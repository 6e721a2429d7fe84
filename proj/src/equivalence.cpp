#include "chm/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace chm {

namespace {

using Cx = std::complex<double>;

std::vector<double> sorted_parts(const Cx* row, int n, int stride, bool real) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k)
    v[k] = real ? row[k * stride].real() : row[k * stride].imag();
  std::sort(v.begin(), v.end());
  return v;
}

bool close_sorted(const std::vector<double>& x, const std::vector<double>& y,
                  double tol) {
  for (size_t k = 0; k < x.size(); ++k)
    if (std::abs(x[k] - y[k]) > tol) return false;
  return true;
}

}  // namespace

// Looks for d1, p1, p2, d2 with a = apply_equivalence({d1,p1,p2,d2}, b).
// Both sides are normalized away from the diagonals: the doubly dephased
// form Ad(i,j) = A(i,j) conj(A(i,0)) conj(A(0,j)) A(0,0) must equal, entry
// for entry, V(p,q) = B(p,q) conj(B(p,c)) conj(B(r,q)) B(r,c) under the row
// and column bijections, where (r,c) is the cell of B sent to position
// (0,0). Sweeping every anchor (r,c) and backtracking over row images with
// per-column candidate masks is exhaustive, so NotFound is a proof.
EquivalenceResult equivalence_search(const HadamardMatrix& a,
                                     const HadamardMatrix& b, long budget,
                                     double tol) {
  EquivalenceResult res;
  res.status = EquivalenceStatus::NotFound;
  if (a.n() != b.n()) return res;
  const int n = a.n();
  const int words = (n + 63) / 64;

  std::vector<Cx> ad(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ad[static_cast<size_t>(i) * n + j] =
          a.value(i, j) * std::conj(a.value(i, 0)) * std::conj(a.value(0, j)) *
          a.value(0, 0);

  // Sorted real/imaginary profiles; a row (column) can only map onto a row
  // (column) whose sorted parts agree within tol.
  std::vector<std::vector<double>> ad_row_re(n), ad_row_im(n);
  std::vector<std::vector<double>> ad_col_re(n), ad_col_im(n);
  for (int i = 0; i < n; ++i) {
    ad_row_re[i] = sorted_parts(&ad[static_cast<size_t>(i) * n], n, 1, true);
    ad_row_im[i] = sorted_parts(&ad[static_cast<size_t>(i) * n], n, 1, false);
  }
  for (int j = 0; j < n; ++j) {
    ad_col_re[j] = sorted_parts(&ad[j], n, n, true);
    ad_col_im[j] = sorted_parts(&ad[j], n, n, false);
  }

  auto any_empty = [&](const std::vector<std::uint64_t>& m) {
    for (int j = 0; j + 1 < n; ++j) {
      bool empty = true;
      for (int w = 0; w < words && empty; ++w)
        if (m[static_cast<size_t>(j) * words + w]) empty = false;
      if (empty) return true;
    }
    return false;
  };

  std::vector<Cx> v(static_cast<size_t>(n) * n);
  std::vector<std::vector<double>> v_row_re(n), v_row_im(n), v_col_re(n),
      v_col_im(n);
  std::vector<std::vector<std::uint64_t>> rowmatch(static_cast<size_t>(n) * n);
  std::vector<int> rho(n), kappa(n);
  std::vector<char> used(n), compat(static_cast<size_t>(n) * n);
  bool done = false, out_of_budget = false;

  for (int r = 0; r < n && !done && !out_of_budget; ++r)
    for (int c = 0; c < n && !done && !out_of_budget; ++c) {
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          v[static_cast<size_t>(p) * n + q] =
              b.value(p, q) * std::conj(b.value(p, c)) *
              std::conj(b.value(r, q)) * b.value(r, c);
      for (int p = 0; p < n; ++p) {
        v_row_re[p] = sorted_parts(&v[static_cast<size_t>(p) * n], n, 1, true);
        v_row_im[p] = sorted_parts(&v[static_cast<size_t>(p) * n], n, 1, false);
      }
      for (int q = 0; q < n; ++q) {
        v_col_re[q] = sorted_parts(&v[q], n, n, true);
        v_col_im[q] = sorted_parts(&v[q], n, n, false);
      }

      bool feasible = true;
      for (int i = 1; i < n && feasible; ++i) {
        bool any = false;
        for (int p = 0; p < n; ++p) {
          const bool ok = p != r &&
                          close_sorted(ad_row_re[i], v_row_re[p], tol) &&
                          close_sorted(ad_row_im[i], v_row_im[p], tol);
          compat[static_cast<size_t>(i) * n + p] = ok;
          any = any || ok;
        }
        feasible = any;
      }
      if (!feasible) continue;

      // Initial per-column candidates from the column profiles.
      std::vector<std::uint64_t> mask0(static_cast<size_t>(n - 1) * words, 0);
      for (int j = 1; j < n; ++j) {
        bool any = false;
        for (int q = 0; q < n; ++q)
          if (q != c && close_sorted(ad_col_re[j], v_col_re[q], tol) &&
              close_sorted(ad_col_im[j], v_col_im[q], tol)) {
            mask0[static_cast<size_t>(j - 1) * words + q / 64] |=
                std::uint64_t{1} << (q % 64);
            any = true;
          }
        feasible = feasible && any;
      }
      if (!feasible) continue;

      for (auto& rm : rowmatch) rm.clear();
      auto row_masks = [&](int i, int p) -> const std::vector<std::uint64_t>& {
        auto& rm = rowmatch[static_cast<size_t>(i) * n + p];
        if (rm.empty()) {
          rm.assign(static_cast<size_t>(n - 1) * words, 0);
          for (int j = 1; j < n; ++j)
            for (int q = 0; q < n; ++q)
              if (std::abs(ad[static_cast<size_t>(i) * n + j] -
                           v[static_cast<size_t>(p) * n + q]) <= tol)
                rm[static_cast<size_t>(j - 1) * words + q / 64] |=
                    std::uint64_t{1} << (q % 64);
        }
        return rm;
      };

      auto leaf_matching = [&](const std::vector<std::uint64_t>& masks) {
        std::vector<int> owner(n, -1);  // B column -> result column
        std::vector<char> seen(n);
        auto augment = [&](auto&& self, int j) -> bool {
          const std::uint64_t* w = &masks[static_cast<size_t>(j - 1) * words];
          for (int wd = 0; wd < words; ++wd)
            for (std::uint64_t x = w[wd]; x; x &= x - 1) {
              const int q = wd * 64 + std::countr_zero(x);
              if (seen[q]) continue;
              seen[q] = 1;
              if (owner[q] < 0 || self(self, owner[q])) {
                owner[q] = j;
                return true;
              }
            }
          return false;
        };
        for (int j = 1; j < n; ++j) {
          std::fill(seen.begin(), seen.end(), 0);
          if (!augment(augment, j)) return false;
        }
        kappa[0] = c;
        for (int q = 0; q < n; ++q)
          if (owner[q] >= 0) kappa[owner[q]] = q;
        return true;
      };

      auto dfs = [&](auto&& self, int i,
                     const std::vector<std::uint64_t>& masks) -> bool {
        if (i == n) {
          if (!leaf_matching(masks)) return false;
          DiagonalPhase d1(n), d2(n);
          for (int t = 0; t < n; ++t)
            d1[t] = (a.at(t, 0) * b.at(rho[t], c).conj() * b.at(r, c)).phase();
          for (int j = 0; j < n; ++j)
            d2[j] =
                (a.at(0, j) * a.at(0, 0).conj() * b.at(r, kappa[j]).conj())
                    .phase();
          EquivalenceWitness w{d1, PermutationVector(rho),
                               PermutationVector(kappa), d2};
          if (max_entry_distance(apply_equivalence(w, b), a) > tol)
            return false;
          res.witness = std::move(w);
          return true;
        }
        for (int p = 0; p < n; ++p) {
          if (used[p] || !compat[static_cast<size_t>(i) * n + p]) continue;
          if (++res.nodes_expanded > budget) {
            out_of_budget = true;
            return false;
          }
          std::vector<std::uint64_t> narrowed(masks);
          const auto& rm = row_masks(i, p);
          for (size_t k = 0; k < narrowed.size(); ++k) narrowed[k] &= rm[k];
          if (any_empty(narrowed)) continue;
          rho[i] = p;
          used[p] = 1;
          const bool hit = self(self, i + 1, narrowed);
          used[p] = 0;
          if (hit || out_of_budget) return hit;
        }
        return false;
      };

      std::fill(used.begin(), used.end(), 0);
      rho[0] = r;
      used[r] = 1;
      if (dfs(dfs, 1, mask0)) done = true;
      used[r] = 0;
    }

  if (done)
    res.status = EquivalenceStatus::Found;
  else if (out_of_budget)
    res.status = EquivalenceStatus::Exhausted;
  return res;
}

}  // namespace chm
