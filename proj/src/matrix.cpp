#include "chm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chm {

UnimodularEntry UnimodularEntry::from_phase(const PhaseValue& p) {
  UnimodularEntry e;
  e.v_ = p.unit();
  if (p.exact()) {
    e.turns_ = p.turns_value();
  } else {
    e.turns_.reset();
  }
  return e;
}

UnimodularEntry UnimodularEntry::from_turns(const Rational& t) {
  return from_phase(PhaseValue::turns(t));
}

UnimodularEntry UnimodularEntry::from_value(std::complex<double> v) {
  UnimodularEntry e;
  e.v_ = v;
  e.turns_.reset();
  return e;
}

PhaseValue UnimodularEntry::phase() const {
  if (turns_) return PhaseValue::turns(*turns_);
  return PhaseValue::radians(std::arg(v_));
}

UnimodularEntry UnimodularEntry::operator*(const UnimodularEntry& o) const {
  return from_phase(phase() + o.phase());
}

UnimodularEntry UnimodularEntry::conj() const {
  if (turns_) return from_turns(-*turns_);
  UnimodularEntry e;
  e.v_ = std::conj(v_);  // keeps raw values bit-exact under conjugation
  e.turns_.reset();
  return e;
}

HadamardMatrix::HadamardMatrix(int n, std::vector<UnimodularEntry> row_major,
                               MatrixMeta meta)
    : n_(n), e_(std::move(row_major)), meta_(std::move(meta)) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  if (e_.size() != static_cast<size_t>(n) * n) {
    throw std::invalid_argument("entry count does not match size");
  }
}

HadamardMatrix HadamardMatrix::from_turns(
    const std::vector<std::vector<Rational>>& grid, MatrixMeta meta) {
  const int n = static_cast<int>(grid.size());
  std::vector<UnimodularEntry> e;
  e.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : grid) {
    if (row.size() != static_cast<size_t>(n)) {
      throw std::invalid_argument("phase grid is not square");
    }
    for (const auto& t : row) e.push_back(UnimodularEntry::from_turns(t));
  }
  return HadamardMatrix(n, std::move(e), std::move(meta));
}

HadamardMatrix HadamardMatrix::from_values(
    const std::vector<std::vector<std::complex<double>>>& grid,
    MatrixMeta meta) {
  const int n = static_cast<int>(grid.size());
  std::vector<UnimodularEntry> e;
  e.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : grid) {
    if (row.size() != static_cast<size_t>(n)) {
      throw std::invalid_argument("value grid is not square");
    }
    for (const auto& v : row) e.push_back(UnimodularEntry::from_value(v));
  }
  return HadamardMatrix(n, std::move(e), std::move(meta));
}

HadamardMatrix HadamardMatrix::with_meta(MatrixMeta m) const {
  HadamardMatrix copy = *this;
  copy.meta_ = std::move(m);
  return copy;
}

bool HadamardMatrix::all_exact() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const UnimodularEntry& e) { return e.exact(); });
}

HadamardMatrix HadamardMatrix::transpose() const {
  std::vector<UnimodularEntry> e(e_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) e[static_cast<size_t>(j) * n_ + i] = at(i, j);
  return HadamardMatrix(n_, std::move(e), meta_);
}

HadamardMatrix HadamardMatrix::conjugate() const {
  std::vector<UnimodularEntry> e;
  e.reserve(e_.size());
  for (const auto& x : e_) e.push_back(x.conj());
  return HadamardMatrix(n_, std::move(e), meta_);
}

HadamardMatrix HadamardMatrix::hermitian_transpose() const {
  return transpose().conjugate();
}

MatrixVariants matrix_variants(const HadamardMatrix& m) {
  return {m.transpose(), m.conjugate(), m.hermitian_transpose()};
}

double max_entry_distance(const HadamardMatrix& a, const HadamardMatrix& b) {
  if (a.n() != b.n()) throw std::invalid_argument("size mismatch");
  double worst = 0.0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      worst = std::max(worst, std::abs(a.value(i, j) - b.value(i, j)));
  return worst;
}

PermutationVector::PermutationVector(std::vector<int> image)
    : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (int v : image_) {
    if (v < 0 || v >= static_cast<int>(image_.size()) || seen[v]) {
      throw std::invalid_argument("permutation image is not a bijection");
    }
    seen[v] = true;
  }
}

PermutationVector PermutationVector::identity(int n) {
  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) image[i] = i;
  return PermutationVector(std::move(image));
}

PermutationVector PermutationVector::inverse() const {
  std::vector<int> inv(image_.size());
  for (int i = 0; i < n(); ++i) inv[image_[i]] = i;
  return PermutationVector(std::move(inv));
}

bool PermutationVector::is_identity() const {
  for (int i = 0; i < n(); ++i)
    if (image_[i] != i) return false;
  return true;
}

EquivalenceWitness EquivalenceWitness::inverse() const {
  PermutationVector q1 = p1.inverse();
  PermutationVector q2 = p2.inverse();
  DiagonalPhase e1(d1.size()), e2(d2.size());
  for (int a = 0; a < q1.n(); ++a) e1[a] = -d1[q1[a]];
  for (int b = 0; b < q2.n(); ++b) e2[b] = -d2[q2[b]];
  return {std::move(e1), std::move(q1), std::move(q2), std::move(e2)};
}

HadamardMatrix apply_equivalence(const EquivalenceWitness& w,
                                 const HadamardMatrix& m) {
  const int n = m.n();
  if (w.p1.n() != n || w.p2.n() != n ||
      static_cast<int>(w.d1.size()) != n || static_cast<int>(w.d2.size()) != n) {
    throw std::invalid_argument("witness size does not match matrix");
  }
  std::vector<UnimodularEntry> e;
  e.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const PhaseValue p = w.d1[i] + m.at(w.p1[i], w.p2[j]).phase() + w.d2[j];
      e.push_back(UnimodularEntry::from_phase(p));
    }
  }
  return HadamardMatrix(n, std::move(e), m.meta());
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

int rref(RationalMatrix& m) {
  const int rows = m.rows();
  const int cols = m.cols();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (!m.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int c = 0; c < cols; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
    }
    const Rational inv = Rational(1) / m.at(rank, col);
    for (int c = col; c < cols; ++c) m.at(rank, c) *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m.at(r, col).is_zero()) continue;
      const Rational f = m.at(r, col);
      for (int c = col; c < cols; ++c) m.at(r, c) -= f * m.at(rank, c);
    }
    ++rank;
  }
  return rank;
}

AffineFamily::AffineFamily(HadamardMatrix base,
                           std::vector<RationalMatrix> patterns,
                           std::vector<std::string> param_names)
    : base_(std::move(base)),
      patterns_(std::move(patterns)),
      param_names_(std::move(param_names)) {
  const int n = base_.n();
  if (param_names_.size() != patterns_.size()) {
    throw std::invalid_argument("parameter name count mismatch");
  }
  for (const auto& r : patterns_) {
    if (r.rows() != n || r.cols() != n) {
      throw std::invalid_argument("pattern size mismatch");
    }
    for (int k = 0; k < n; ++k) {
      if (!r.at(0, k).is_zero() || !r.at(k, 0).is_zero()) {
        throw std::invalid_argument("pattern must have zero first row/column");
      }
    }
  }
  if (!patterns_.empty()) {
    RationalMatrix flat(static_cast<int>(patterns_.size()), n * n);
    for (size_t k = 0; k < patterns_.size(); ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          flat.at(static_cast<int>(k), i * n + j) = patterns_[k].at(i, j);
    if (rref(flat) != static_cast<int>(patterns_.size())) {
      throw std::invalid_argument("pattern matrices are linearly dependent");
    }
  }
}

namespace {

template <typename Param>
HadamardMatrix eval_family(const HadamardMatrix& base,
                           const std::vector<RationalMatrix>& patterns,
                           const std::vector<Param>& params,
                           PhaseValue (*to_phase)(const Param&, const Rational&)) {
  if (params.size() != patterns.size()) {
    throw std::invalid_argument("parameter count mismatch");
  }
  const int n = base.n();
  std::vector<UnimodularEntry> e;
  e.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      PhaseValue p = base.at(i, j).phase();
      for (size_t k = 0; k < patterns.size(); ++k) {
        const Rational& c = patterns[k].at(i, j);
        if (!c.is_zero()) p = p + to_phase(params[k], c);
      }
      e.push_back(UnimodularEntry::from_phase(p));
    }
  }
  return HadamardMatrix(n, std::move(e), base.meta());
}

PhaseValue scaled_radians(const double& v, const Rational& c) {
  return PhaseValue::radians(v * c.to_double());
}

PhaseValue scaled_phase(const PhaseValue& v, const Rational& c) {
  if (v.exact()) return PhaseValue::turns(v.turns_value() * c);
  return PhaseValue::radians(v.radians_value() * c.to_double());
}

}  // namespace

HadamardMatrix AffineFamily::eval(const std::vector<double>& params) const {
  return eval_family<double>(base_, patterns_, params, &scaled_radians);
}

HadamardMatrix AffineFamily::eval(const std::vector<PhaseValue>& params) const {
  return eval_family<PhaseValue>(base_, patterns_, params, &scaled_phase);
}

}  // namespace chm
