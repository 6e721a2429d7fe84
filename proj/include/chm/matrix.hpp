#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chm/phase.hpp"

namespace chm {

// Default tolerance for accepting a raw complex value as unit-modulus.
inline constexpr double kUnimodularTol = 1e-12;

// One unit-modulus matrix entry. Carries the exact rational phase when it is
// known. Entries built from raw complex values keep those values bit for bit
// (documents must round-trip); their phase is recovered from arg() on demand.
class UnimodularEntry {
 public:
  UnimodularEntry() : v_(1.0, 0.0), turns_(Rational(0)) {}

  static UnimodularEntry from_phase(const PhaseValue& p);
  static UnimodularEntry from_turns(const Rational& t);
  static UnimodularEntry from_value(std::complex<double> v);

  std::complex<double> value() const { return v_; }
  bool exact() const { return turns_.has_value(); }
  PhaseValue phase() const;

  // Phase addition; exact iff both operands are exact. Keeps the product on
  // the unit circle by construction instead of multiplying complex values.
  UnimodularEntry operator*(const UnimodularEntry& o) const;
  UnimodularEntry conj() const;

  double modulus_error() const { return std::abs(std::abs(v_) - 1.0); }

 private:
  std::complex<double> v_;
  std::optional<Rational> turns_;
};

struct MatrixMeta {
  std::string name;
  std::vector<std::pair<std::string, double>> params;  // insertion order kept
  std::string notes;
};

// Dense row-major square matrix of unit-modulus entries, the common carrier
// for Hadamard matrices and candidates to be validated. Value type; all
// transforms return new matrices.
class HadamardMatrix {
 public:
  HadamardMatrix(int n, std::vector<UnimodularEntry> row_major,
                 MatrixMeta meta = {});

  // Entry (i,j) has phase grid[i][j] turns.
  static HadamardMatrix from_turns(const std::vector<std::vector<Rational>>& grid,
                                   MatrixMeta meta = {});
  static HadamardMatrix from_values(
      const std::vector<std::vector<std::complex<double>>>& grid,
      MatrixMeta meta = {});

  int n() const { return n_; }
  const UnimodularEntry& at(int i, int j) const { return e_[i * n_ + j]; }
  std::complex<double> value(int i, int j) const { return at(i, j).value(); }

  const MatrixMeta& meta() const { return meta_; }
  HadamardMatrix with_meta(MatrixMeta m) const;

  // True iff every entry carries an exact rational phase.
  bool all_exact() const;

  HadamardMatrix transpose() const;
  HadamardMatrix conjugate() const;
  HadamardMatrix hermitian_transpose() const;

 private:
  int n_;
  std::vector<UnimodularEntry> e_;
  MatrixMeta meta_;
};

struct MatrixVariants {
  HadamardMatrix transpose;
  HadamardMatrix conjugate;
  HadamardMatrix hermitian_transpose;
};

MatrixVariants matrix_variants(const HadamardMatrix& m);

// Largest entrywise |a - b|.
double max_entry_distance(const HadamardMatrix& a, const HadamardMatrix& b);

// Phase diagonal, applied entrywise. For column-side dephasers the first
// phase is zero by construction.
using DiagonalPhase = std::vector<PhaseValue>;

// Permutation sigma of {0..n-1} stored as an image table. Acting on a matrix,
// result row i is source row sigma[i] and result column j is source column
// sigma[j]; see apply_equivalence.
class PermutationVector {
 public:
  explicit PermutationVector(std::vector<int> image);  // must be a bijection
  static PermutationVector identity(int n);

  int n() const { return static_cast<int>(image_.size()); }
  int operator[](int i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }

  PermutationVector inverse() const;
  bool is_identity() const;

 private:
  std::vector<int> image_;
};

// Equivalence transform: result(i,j) = e^{i*d1[i]} * M(p1[i], p2[j]) * e^{i*d2[j]}.
struct EquivalenceWitness {
  DiagonalPhase d1;
  PermutationVector p1;
  PermutationVector p2;
  DiagonalPhase d2;

  EquivalenceWitness inverse() const;
};

HadamardMatrix apply_equivalence(const EquivalenceWitness& w,
                                 const HadamardMatrix& m);

// Dense rational matrix; used for affine-family pattern bases and for the
// exact linear algebra behind pattern solving.
class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const {
    return e_[static_cast<size_t>(i) * cols_ + j];
  }

  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  RationalMatrix transpose() const;

 private:
  int rows_, cols_;
  std::vector<Rational> e_;
};

// In-place reduced row echelon form (leading ones, pivots eliminated in both
// directions, canonical for a given row space). Returns the rank.
int rref(RationalMatrix& m);

// Affine family: dephased base H plus linearly independent pattern matrices
// R_k with zero first row and column. Members are H with phases shifted by
// sum_k params[k] * R_k.
class AffineFamily {
 public:
  AffineFamily(HadamardMatrix base, std::vector<RationalMatrix> patterns,
               std::vector<std::string> param_names);

  const HadamardMatrix& base() const { return base_; }
  const std::vector<RationalMatrix>& patterns() const { return patterns_; }
  const std::vector<std::string>& param_names() const { return param_names_; }
  int dimension() const { return static_cast<int>(patterns_.size()); }

  // Phase shift sum_k params[k] * R_k applied to the base; params in radians.
  HadamardMatrix eval(const std::vector<double>& params) const;
  // Same with exact phases (rational turns stay rational).
  HadamardMatrix eval(const std::vector<PhaseValue>& params) const;

 private:
  HadamardMatrix base_;
  std::vector<RationalMatrix> patterns_;
  std::vector<std::string> param_names_;
};

}  // namespace chm
