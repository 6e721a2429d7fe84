#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "chm/matrix.hpp"

namespace chm {

// Kronecker product; phases add, so exact inputs give an exact result.
HadamardMatrix tensor(const HadamardMatrix& a, const HadamardMatrix& b);

// Block composition: result block (j,k) of size M is A(j,k) * E_k * B_k,
// where the E_k are phase diagonals with leading phase 0 and E_1 = identity
// (es holds E_2..E_K). All B_k must share one size M; preserves dephased
// form when A and the B_k are dephased.
HadamardMatrix dita_compose(const HadamardMatrix& a,
                            const std::vector<HadamardMatrix>& bs,
                            const std::vector<DiagonalPhase>& es);

// Free parameters of the composed family: a + sum(bs) + (K-1)*(M-1).
long dita_parameter_count(long a, const std::vector<long>& bs, long k, long m);

// [[A, E B], [A, -E B]]; e has leading phase 0.
HadamardMatrix doubled(const HadamardMatrix& a, const HadamardMatrix& b,
                       const DiagonalPhase& e);

// 4N construction with sign blocks:
// [[ A,  B',  C',  D'], [A, -B', C', -D'], [A, B', -C', -D'], [A, -B', -C', D']]
// where B' = E1*B, C' = E2*C, D' = E3*D and each E has leading phase 0.
HadamardMatrix quadrupled(const HadamardMatrix& a, const HadamardMatrix& b,
                          const HadamardMatrix& c, const HadamardMatrix& d,
                          const DiagonalPhase& e1, const DiagonalPhase& e2,
                          const DiagonalPhase& e3);

// Family member at the given parameters (radians).
HadamardMatrix affine_eval(const AffineFamily& f,
                           const std::vector<double>& params);
HadamardMatrix affine_eval(const AffineFamily& f,
                           const std::vector<PhaseValue>& params);

// The sequence M(i,k) * conj(M(j,k)), k = 0..n-1. Sums to 0 over the whole
// row pair when M is Hadamard; any zero-sum subset is a closed subchain.
std::vector<std::complex<double>> chains(const HadamardMatrix& m, int i, int j);

// For every row pair (i<j), a partition of the column set into blocks, each
// of which must be a closed subchain of that pair's chain.
struct SubchainPattern {
  int n = 0;
  // blocks[pair_index(n,i,j)] = partition of {0..n-1}.
  std::vector<std::vector<std::vector<int>>> blocks;

  static int pair_count(int n) { return n * (n - 1) / 2; }
  static int pair_index(int n, int i, int j);
  static SubchainPattern trivial(int n);  // one whole-chain block per pair
};

// Solution space of the linear phase-perturbation system induced by a
// pattern: first row/column pinned to zero, and within every block the
// differences R(i,k) - R(j,k) agree. Exact rational arithmetic; basis in
// reduced echelon form over the flattened n*n variables.
struct PatternSpace {
  int dimension = 0;
  std::vector<RationalMatrix> basis;  // n x n, zero first row/column

  // Canonical row-space form of the flattened basis; equal spaces compare
  // equal.
  RationalMatrix reduced_rows() const;
  bool same_space(const PatternSpace& o) const;
  bool contains(const PatternSpace& o) const;
};

// Throws std::invalid_argument naming the offending pair and block when some
// block is not closed within tol.
PatternSpace solve_pattern(const HadamardMatrix& m,
                           const SubchainPattern& pattern,
                           double tol = 1e-10);

struct EnumerationLimits {
  long max_nodes = 2000000;
  int max_partitions_per_chain = 512;
};

// Enumerates per-pair partitions into irreducible closed blocks (blocks with
// no proper zero-sum subset; refining a reducible block only enlarges the
// solution space, so maximal spaces are preserved), solves each combined
// pattern, and returns the maximal solution spaces with one witness pattern
// each. Dimension-0 subtrees, repeated (depth, space) states and subtrees
// whose space is already inside a collected leaf are pruned. Only for n <= 6.
std::vector<std::pair<SubchainPattern, PatternSpace>> enumerate_patterns(
    const HadamardMatrix& m, const EnumerationLimits& limits = {});

}  // namespace chm
