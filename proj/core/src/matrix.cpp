#include "mtc/matrix.hpp"

#include <algorithm>

namespace mtc {

Matrix::Matrix(RingPtr ring, size_t rows, size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(rows * cols, CycScalar::zero(ring_)) {}

Matrix Matrix::zero(const RingPtr& ring, size_t rows, size_t cols) { return Matrix(ring, rows, cols); }

Matrix Matrix::identity(const RingPtr& ring, size_t n) {
  Matrix m(ring, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = CycScalar::one(ring);
  return m;
}

Matrix Matrix::scalar(const RingPtr& ring, size_t n, const CycScalar& c) {
  Matrix m(ring, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

Matrix Matrix::column(const RingPtr& ring, const std::vector<CycScalar>& entries) {
  Matrix m(ring, entries.size(), 1);
  for (size_t i = 0; i < entries.size(); ++i) m.at(i, 0) = entries[i];
  return m;
}

Matrix Matrix::row_vector(const RingPtr& ring, const std::vector<CycScalar>& entries) {
  Matrix m(ring, 1, entries.size());
  for (size_t i = 0; i < entries.size(); ++i) m.at(0, i) = entries[i];
  return m;
}

void Matrix::check_ring(const Matrix& o) const {
  if (ring_.get() != o.ring_.get()) fail(errc::ring_mismatch, "matrices from different rings");
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t k = 0; k < e_.size(); ++k)
    if (e_[k] != o.e_[k]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      if (i == j && !at(i, j).is_one()) return false;
      if (i != j && !at(i, j).is_zero()) return false;
    }
  return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_ring(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(errc::shape_mismatch, "matrix add shape");
  Matrix r = *this;
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_ring(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(errc::shape_mismatch, "matrix sub shape");
  Matrix r = *this;
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_ring(o);
  if (cols_ != o.rows_) fail(errc::shape_mismatch, "matrix mul shape");
  Matrix r(ring_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const CycScalar& a = at(i, k);
      if (a.is_zero()) continue; // zero-skip keeps sparse products cheap
      for (size_t j = 0; j < o.cols_; ++j) {
        const CycScalar& b = o.at(k, j);
        if (b.is_zero()) continue;
        r.at(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator*(const CycScalar& c) const {
  Matrix r = *this;
  for (auto& x : r.e_) x *= c;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(ring_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::kron(const Matrix& b) const {
  check_ring(b);
  Matrix r(ring_, rows_ * b.rows_, cols_ * b.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      const CycScalar& a = at(i, j);
      if (a.is_zero()) continue;
      for (size_t p = 0; p < b.rows_; ++p)
        for (size_t q = 0; q < b.cols_; ++q) {
          const CycScalar& x = b.at(p, q);
          if (x.is_zero()) continue;
          r.at(i * b.rows_ + p, j * b.cols_ + q) = a * x;
        }
    }
  return r;
}

Matrix Matrix::hstack(const Matrix& b) const {
  check_ring(b);
  if (rows_ != b.rows_) fail(errc::shape_mismatch, "hstack rows");
  Matrix r(ring_, rows_, cols_ + b.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (size_t j = 0; j < b.cols_; ++j) r.at(i, cols_ + j) = b.at(i, j);
  }
  return r;
}

Matrix Matrix::vstack(const Matrix& b) const {
  check_ring(b);
  if (cols_ != b.cols_) fail(errc::shape_mismatch, "vstack cols");
  Matrix r(ring_, rows_ + b.rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (size_t i = 0; i < b.rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = b.at(i, j);
  return r;
}

Matrix Matrix::submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(errc::shape_mismatch, "submatrix bounds");
  Matrix r(ring_, nr, nc);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

std::vector<size_t> Matrix::rref_in_place(Matrix& m, size_t limit_cols) {
  std::vector<size_t> pivots;
  size_t lead = 0;
  for (size_t col = 0; col < limit_cols && lead < m.rows_; ++col) {
    size_t pivot = lead;
    while (pivot < m.rows_ && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows_) continue;
    if (pivot != lead)
      for (size_t j = 0; j < m.cols_; ++j) std::swap(m.at(pivot, j), m.at(lead, j));
    auto inv = m.at(lead, col).try_inverse();
    if (!inv) fail(errc::not_invertible, "elimination pivot is a zero divisor");
    for (size_t j = 0; j < m.cols_; ++j) m.at(lead, j) *= *inv;
    for (size_t i = 0; i < m.rows_; ++i) {
      if (i == lead) continue;
      CycScalar f = m.at(i, col);
      if (f.is_zero()) continue;
      for (size_t j = 0; j < m.cols_; ++j) m.at(i, j) -= f * m.at(lead, j);
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

Matrix Matrix::rref() const {
  Matrix m = *this;
  rref_in_place(m, cols_);
  return m;
}

size_t Matrix::rank() const {
  Matrix m = *this;
  return rref_in_place(m, cols_).size();
}

Matrix Matrix::kernel_basis() const {
  Matrix m = *this;
  auto pivots = rref_in_place(m, cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : pivots) is_pivot[c] = true;
  size_t nfree = cols_ - pivots.size();
  Matrix basis(ring_, cols_, nfree);
  size_t bcol = 0;
  for (size_t free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    basis.at(free_col, bcol) = CycScalar::one(ring_);
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      basis.at(pivots[pr], bcol) = -m.at(pr, free_col);
    ++bcol;
  }
  return basis;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
  check_ring(b);
  if (rows_ != b.rows_) fail(errc::shape_mismatch, "solve: a.rows != b.rows");
  Matrix aug = hstack(b);
  auto pivots = rref_in_place(aug, cols_);
  // consistency: no pivot allowed in the augmented block
  for (size_t i = pivots.size(); i < rows_; ++i)
    for (size_t j = cols_; j < aug.cols(); ++j)
      if (!aug.at(i, j).is_zero()) return std::nullopt;
  Matrix x(ring_, cols_, b.cols());
  for (size_t pr = 0; pr < pivots.size(); ++pr)
    for (size_t j = 0; j < b.cols(); ++j) x.at(pivots[pr], j) = aug.at(pr, cols_ + j);
  return x;
}

std::pair<Matrix, Matrix> Matrix::cokernel_projection() const {
  // Column space basis from the pivot columns of rref(this), then extend to a
  // full basis with standard vectors in index order.
  Matrix m = *this;
  auto pivots = rref_in_place(m, cols_);
  size_t r = pivots.size();
  Matrix full(ring_, rows_, rows_);
  for (size_t k = 0; k < r; ++k)
    for (size_t i = 0; i < rows_; ++i) full.at(i, k) = at(i, pivots[k]);
  // greedily extend with e_i keeping deterministic order
  size_t have = r;
  std::vector<size_t> chosen;
  for (size_t i = 0; i < rows_ && have < rows_; ++i) {
    Matrix trial = full.submatrix(0, 0, rows_, have);
    Matrix ei(ring_, rows_, 1);
    ei.at(i, 0) = CycScalar::one(ring_);
    Matrix probe = trial.hstack(ei);
    if (probe.rank() == have + 1) {
      for (size_t row = 0; row < rows_; ++row) full.at(row, have) = ei.at(row, 0);
      chosen.push_back(i);
      ++have;
    }
  }
  if (have != rows_) fail(errc::internal, "cokernel basis extension failed");
  Matrix inv = full.inverse();
  size_t q = rows_ - r;
  Matrix pi = inv.submatrix(r, 0, q, rows_);
  Matrix iota(ring_, rows_, q);
  for (size_t k = 0; k < q; ++k) iota.at(chosen[k], k) = CycScalar::one(ring_);
  return {pi, iota};
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) fail(errc::shape_mismatch, "inverse of non-square matrix");
  Matrix aug = hstack(identity(ring_, rows_));
  auto pivots = rref_in_place(aug, cols_);
  if (pivots.size() != rows_) fail(errc::not_invertible, "matrix is singular");
  return aug.submatrix(0, cols_, rows_, rows_);
}

std::optional<CycScalar> Matrix::as_scalar_multiple_of_identity() const {
  if (rows_ != cols_ || rows_ == 0) return std::nullopt;
  CycScalar c = at(0, 0);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      if (i == j && at(i, j) != c) return std::nullopt;
      if (i != j && !at(i, j).is_zero()) return std::nullopt;
    }
  return c;
}

bool Matrix::spans_column(const Matrix& v) const { return solve(v).has_value(); }

} // namespace mtc
