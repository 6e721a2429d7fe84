#include "chm/construct.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chm {

namespace {

// Rows of a (dim x n*n) matrix, one flattened basis element each.
RationalMatrix stack_flat(const std::vector<RationalMatrix>& basis) {
  if (basis.empty()) return RationalMatrix(0, 0);
  const int n = basis[0].rows();
  RationalMatrix out(static_cast<int>(basis.size()), n * n);
  for (int r = 0; r < static_cast<int>(basis.size()); ++r)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.at(r, i * n + j) = basis[r].at(i, j);
  return out;
}

std::string block_str(const std::vector<int>& block) {
  std::ostringstream os;
  os << '{';
  for (size_t t = 0; t < block.size(); ++t) os << (t ? "," : "") << block[t];
  os << '}';
  return os.str();
}

// Pin rows (first row and column of the perturbation forced to zero) plus,
// for every listed pair, one equal-difference row per non-leading block
// member: R(i,k) - R(j,k) = R(i,k0) - R(j,k0).
RationalMatrix constraint_rows(const SubchainPattern& pattern, int n,
                               int pair_limit) {
  long extra = 0;
  for (int p = 0; p < pair_limit; ++p)
    for (const auto& block : pattern.blocks[p])
      extra += static_cast<long>(block.size()) - 1;

  RationalMatrix c(2 * n - 1 + static_cast<int>(extra), n * n);
  int r = 0;
  for (int j = 0; j < n; ++j) c.at(r++, j) = Rational(1);
  for (int i = 1; i < n; ++i) c.at(r++, i * n) = Rational(1);
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++p) {
      if (p >= pair_limit) continue;
      for (const auto& block : pattern.blocks[p]) {
        const int k0 = block[0];
        for (size_t t = 1; t < block.size(); ++t) {
          const int k = block[t];
          c.at(r, i * n + k) = Rational(1);
          c.at(r, j * n + k) = Rational(-1);
          c.at(r, i * n + k0) = Rational(-1);
          c.at(r, j * n + k0) = Rational(1);
          ++r;
        }
      }
    }
  return c;
}

// Kernel of the constraint matrix, as n x n basis matrices in a canonical
// reduced form (so equal spaces get equal bases).
PatternSpace kernel_space(RationalMatrix c, int n) {
  const int rank = rref(c);
  std::vector<int> pivot_col(rank);
  std::vector<char> is_pivot(static_cast<size_t>(n) * n, 0);
  for (int rr = 0; rr < rank; ++rr) {
    int pc = 0;
    while (c.at(rr, pc).is_zero()) ++pc;
    pivot_col[rr] = pc;
    is_pivot[pc] = 1;
  }

  PatternSpace space;
  space.dimension = n * n - rank;
  for (int fc = 0; fc < n * n; ++fc) {
    if (is_pivot[fc]) continue;
    RationalMatrix v(n, n);
    v.at(fc / n, fc % n) = Rational(1);
    for (int rr = 0; rr < rank; ++rr)
      v.at(pivot_col[rr] / n, pivot_col[rr] % n) = -c.at(rr, fc);
    space.basis.push_back(std::move(v));
  }

  RationalMatrix rb = stack_flat(space.basis);
  rref(rb);
  for (int rr = 0; rr < space.dimension; ++rr)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) space.basis[rr].at(i, j) = rb.at(rr, i * n + j);
  return space;
}

}  // namespace

RationalMatrix PatternSpace::reduced_rows() const {
  RationalMatrix m = stack_flat(basis);
  rref(m);
  return m;
}

bool PatternSpace::same_space(const PatternSpace& o) const {
  return dimension == o.dimension && reduced_rows() == o.reduced_rows();
}

bool PatternSpace::contains(const PatternSpace& o) const {
  if (o.dimension > dimension) return false;
  std::vector<RationalMatrix> all = basis;
  all.insert(all.end(), o.basis.begin(), o.basis.end());
  RationalMatrix m = stack_flat(all);
  return rref(m) == dimension;
}

PatternSpace solve_pattern(const HadamardMatrix& m,
                           const SubchainPattern& pattern, double tol) {
  const int n = m.n();
  if (pattern.n != n ||
      static_cast<int>(pattern.blocks.size()) != SubchainPattern::pair_count(n))
    throw std::invalid_argument(
        "solve_pattern: pattern shape does not match the matrix");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& part = pattern.blocks[SubchainPattern::pair_index(n, i, j)];
      std::vector<int> seen(n, 0);
      for (const auto& block : part) {
        std::complex<double> sum = 0.0;
        for (int k : block) {
          if (k < 0 || k >= n || seen[k]++) {
            std::ostringstream os;
            os << "solve_pattern: blocks of pair (" << i << "," << j
               << ") do not partition the columns";
            throw std::invalid_argument(os.str());
          }
          sum += m.value(i, k) * std::conj(m.value(j, k));
        }
        if (std::abs(sum) > tol) {
          std::ostringstream os;
          os << "solve_pattern: block " << block_str(block) << " of pair (" << i
             << "," << j << ") is not closed (|sum| = " << std::abs(sum) << ")";
          throw std::invalid_argument(os.str());
        }
      }
      for (int k = 0; k < n; ++k)
        if (!seen[k]) {
          std::ostringstream os;
          os << "solve_pattern: blocks of pair (" << i << "," << j
             << ") do not cover column " << k;
          throw std::invalid_argument(os.str());
        }
    }

  return kernel_space(
      constraint_rows(pattern, n, SubchainPattern::pair_count(n)), n);
}

namespace {

constexpr double kChainTol = 1e-10;

// Closed subsets (as bitmasks) with no proper nonempty closed subset.
std::vector<unsigned> irreducible_closed_sets(
    const std::vector<std::complex<double>>& chain) {
  const int n = static_cast<int>(chain.size());
  const unsigned full = (1u << n) - 1;
  std::vector<char> closed(full + 1, 0);
  std::vector<std::complex<double>> sum(full + 1, 0.0);
  for (unsigned s = 1; s <= full; ++s) {
    sum[s] = sum[s & (s - 1)] + chain[std::countr_zero(s)];
    closed[s] = std::abs(sum[s]) <= kChainTol;
  }
  std::vector<unsigned> out;
  for (unsigned s = 1; s <= full; ++s) {
    if (!closed[s]) continue;
    bool irreducible = true;
    for (unsigned t = (s - 1) & s; t; t = (t - 1) & s)
      if (closed[t]) {
        irreducible = false;
        break;
      }
    if (irreducible) out.push_back(s);
  }
  return out;
}

// All partitions of {0..n-1} into irreducible closed blocks; within each
// partition blocks are ordered by smallest member, and the partitions come
// out in lexicographic order of that block sequence.
std::vector<std::vector<std::vector<int>>> closed_partitions(
    const std::vector<std::complex<double>>& chain, int max_partitions) {
  const int n = static_cast<int>(chain.size());
  const unsigned full = (1u << n) - 1;
  const std::vector<unsigned> blocks = irreducible_closed_sets(chain);

  std::vector<std::vector<std::vector<int>>> out;
  std::vector<unsigned> chosen;
  auto rec = [&](auto&& self, unsigned covered) -> void {
    if (static_cast<int>(out.size()) >= max_partitions) return;
    if (covered == full) {
      std::vector<std::vector<int>> part;
      for (unsigned b : chosen) {
        std::vector<int> ids;
        for (int k = 0; k < n; ++k)
          if (b & (1u << k)) ids.push_back(k);
        part.push_back(std::move(ids));
      }
      out.push_back(std::move(part));
      return;
    }
    const unsigned lowest = 1u << std::countr_zero(~covered);
    for (unsigned b : blocks) {
      if (!(b & lowest) || (b & covered)) continue;
      chosen.push_back(b);
      self(self, covered | b);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::string space_key(const PatternSpace& s) {
  const RationalMatrix m = s.reduced_rows();
  std::ostringstream os;
  os << m.rows() << 'x' << m.cols() << ';';
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) os << m.at(i, j).str() << ',';
  return os.str();
}

}  // namespace

std::vector<std::pair<SubchainPattern, PatternSpace>> enumerate_patterns(
    const HadamardMatrix& m, const EnumerationLimits& limits) {
  const int n = m.n();
  if (n > 6)
    throw std::invalid_argument(
        "enumerate_patterns: only sizes up to 6 are supported");
  if (n < 1) throw std::invalid_argument("enumerate_patterns: empty matrix");

  const int pairs = SubchainPattern::pair_count(n);
  std::vector<std::vector<std::vector<std::vector<int>>>> options(pairs);
  {
    int p = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        options[p++] =
            closed_partitions(chains(m, i, j), limits.max_partitions_per_chain);
  }

  std::vector<std::pair<SubchainPattern, PatternSpace>> collected;
  std::map<std::pair<int, std::string>, char> visited;
  long nodes = 0;

  SubchainPattern current;
  current.n = n;
  current.blocks.resize(pairs);

  // The space at a node solves the pin rows plus the block constraints of
  // the pairs decided so far; deeper nodes only add constraints, so spaces
  // shrink monotonically along every branch. That makes three prunes sound:
  // a zero-dimensional node has only zero-dimensional leaves below it, a
  // node whose space sits inside an already collected leaf cannot lead to a
  // new maximal space, and two nodes at one depth with equal spaces have
  // identical leaf spaces below them.
  auto rec = [&](auto&& self, int depth, const PatternSpace& space) -> void {
    if (++nodes > limits.max_nodes)
      throw std::runtime_error("enumerate_patterns: node budget exceeded");
    if (space.dimension == 0) return;
    for (const auto& leaf : collected)
      if (leaf.second.contains(space)) return;
    if (depth == pairs) {
      std::vector<std::pair<SubchainPattern, PatternSpace>> kept;
      for (auto& old : collected)
        if (!space.contains(old.second)) kept.push_back(std::move(old));
      kept.emplace_back(current, space);
      collected = std::move(kept);
      return;
    }
    if (!visited.emplace(std::make_pair(depth, space_key(space)), 1).second)
      return;
    for (const auto& part : options[depth]) {
      current.blocks[depth] = part;
      self(self, depth + 1,
           kernel_space(constraint_rows(current, n, depth + 1), n));
    }
    current.blocks[depth].clear();
  };
  rec(rec, 0, kernel_space(constraint_rows(current, n, 0), n));

  return collected;
}

}  // namespace chm
