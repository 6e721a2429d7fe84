#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "chm/matrix.hpp"

namespace chm {

inline constexpr double kEquivTol = 1e-9;
inline constexpr double kClusterTol = 1e-8;
inline constexpr long kDefaultSearchBudget = 10000000;

struct HadamardReport {
  bool pass = false;
  int n = 0;
  double max_gram_deviation = 0.0;    // max |(M M^*)_{ij} - n*delta_{ij}|
  double max_modulus_deviation = 0.0; // max ||entry| - 1|
  int worst_row = -1;                 // Gram cell with the largest deviation
  int worst_col = -1;
  double tol = 0.0;
  double modulus_tol = 0.0;
};

// Gram deviation against tol (default 1e-10 * n) plus entry moduli against
// modulus_tol. Matrices are stored unscaled, so the Gram target is n*I.
HadamardReport is_hadamard(const HadamardMatrix& m, double tol = -1.0,
                           double modulus_tol = kUnimodularTol);

struct DephaseResult {
  DiagonalPhase row_diagonal;     // multiplies from the left
  DiagonalPhase column_diagonal;  // multiplies from the right, leading 0
  HadamardMatrix dephased;
};

// Normalizes first row and column to phase 0. Exact phases stay exact; the
// first row/column come out identically zero even in the float path because
// they are formed as differences x - x.
DephaseResult dephase(const HadamardMatrix& m);

struct LogPhaseMatrix {
  int n = 0;
  std::vector<double> radians;   // row-major, each in [0, 2*pi)
  bool exact = false;            // true iff all phases are rational turns
  std::vector<Rational> turns;   // row-major, set iff exact
  std::optional<int> butson_q;   // least common phase denominator, iff exact

  double rad(int i, int j) const { return radians[static_cast<size_t>(i) * n + j]; }
  const Rational& turn(int i, int j) const {
    return turns[static_cast<size_t>(i) * n + j];
  }
  // q * turns as integers in [0, q); pre: exact and q a multiple of butson_q.
  std::vector<long> scaled_exponents(int q) const;
};

LogPhaseMatrix log_phases(const HadamardMatrix& m);

struct DefectOptions {
  double svd_threshold_scale = 1e-9;  // tau = scale * sigma_max * max(rows, cols)
  bool want_kernel = false;
  bool force_svd_only = false;        // skip the exact path even when available
};

struct DefectReport {
  int n = 0;
  int defect = 0;
  int rank = 0;             // rank of the full constraint system
  bool exact = false;       // true iff certified by the rational path
  int svd_defect = -1;      // numeric answer (always computed)
  int exact_defect = -1;    // certified answer, -1 when unavailable
  std::vector<std::vector<double>> kernel;  // flattened n*n rows, if requested
};

// Dimension of the tangent space of dephased Hadamard deformations at m:
// nullity of the linear system consisting of first-row/column pinning plus
// the differentiated unitarity constraints. Throws std::invalid_argument if
// m fails is_hadamard. When every phase is an exact rational the answer is
// certified by exact cyclotomic arithmetic; the SVD estimate is always
// computed and cross-checked.
DefectReport defect(const HadamardMatrix& m, const DefectOptions& opts = {});

// Closed forms: prime -> 0, p^k -> p^(k-1)*(k*(p-1)-p) + 1, p*q (distinct
// primes) -> 2*(p-1)*(q-1). Other composites return nullopt.
std::optional<long> fourier_defect_formula(long n);

enum class IsolationStatus { Isolated, Unknown };

struct IsolationCertificate {
  IsolationStatus status = IsolationStatus::Unknown;
  bool certified_exact = false;  // the defect-0 witness came from exact arithmetic
  int defect = -1;
};

// defect == 0 implies the matrix is isolated; nonzero defect proves nothing
// in either direction, hence Unknown.
IsolationCertificate is_isolated_certificate(const HadamardMatrix& m);

struct InvariantSet {
  // Cluster representatives, sorted by (re, im); the equivalence-invariant
  // fingerprint.
  std::vector<std::complex<double>> values;
  // Value -> number of quadruples that produced it; diagnostic only (the
  // multiset is NOT invariant under equivalence).
  std::vector<std::pair<std::complex<double>, long>> multiset;
  double cluster_tol = kClusterTol;
};

// All products M(i,j) * conj(M(k,j)) * M(k,l) * conj(M(i,l)), deduplicated
// on a cluster_tol grid; grid cells closer than 2*cluster_tol are merged.
InvariantSet haagerup_invariants(const HadamardMatrix& m,
                                 double cluster_tol = kClusterTol);

bool invariant_sets_match(const InvariantSet& a, const InvariantSet& b);

enum class InvariantVerdict { Inequivalent, Inconclusive };

// Distinct invariant sets prove inequivalence; matching sets prove nothing.
InvariantVerdict inequivalent_by_invariants(const HadamardMatrix& a,
                                            const HadamardMatrix& b);

enum class EquivalenceStatus { Found, NotFound, Exhausted };

struct EquivalenceResult {
  EquivalenceStatus status = EquivalenceStatus::Exhausted;
  std::optional<EquivalenceWitness> witness;  // set iff Found; verified
  long nodes_expanded = 0;
};

// Searches for diagonal/permutation witnesses taking b to a. Backtracking
// over row assignments with per-column candidate masks; sorted entry
// profiles prune rows early. NotFound means the space was exhausted (a
// proof for these finite transforms); Exhausted means the node budget ran
// out first. Any returned witness has been re-verified via apply_equivalence
// against tol.
EquivalenceResult equivalence_search(const HadamardMatrix& a,
                                     const HadamardMatrix& b,
                                     long budget = kDefaultSearchBudget,
                                     double tol = kEquivTol);

// True iff (1/sqrt(n)) * A^dagger * B is again a Hadamard matrix.
bool is_unbiased_pair(const HadamardMatrix& a, const HadamardMatrix& b,
                      double tol = -1.0);

struct CirculantDecomposition {
  std::vector<UnimodularEntry> x;  // first column; M(i,j) = x[(i-j) mod n]
  PermutationVector p;             // reversal fixing 0; M^T = P^T M P
};

std::optional<CirculantDecomposition> circulant_decompose(
    const HadamardMatrix& m, double tol = 1e-12);

// Constraint system behind defect(), exposed for validation. Rows ordered:
// first-row pinning, first-column pinning, then Re/Im pairs per (i<j).
// When include_dephasing is false only the differentiated unitarity rows
// are emitted.
std::vector<std::vector<double>> defect_system_rows(const HadamardMatrix& m,
                                                    bool include_dephasing);

}  // namespace chm
