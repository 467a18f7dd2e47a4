#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mtc/cyc.hpp"

namespace mtc {

/// Dense row-major matrix over CycScalar. Elimination uses a fixed pivot
/// order (first nonzero row per column), so every echelon output is
/// canonical and runs are reproducible.
class Matrix {
public:
  Matrix() = default;
  Matrix(RingPtr ring, size_t rows, size_t cols);

  static Matrix zero(const RingPtr& ring, size_t rows, size_t cols);
  static Matrix identity(const RingPtr& ring, size_t n);
  static Matrix scalar(const RingPtr& ring, size_t n, const CycScalar& c);
  static Matrix column(const RingPtr& ring, const std::vector<CycScalar>& entries);
  static Matrix row_vector(const RingPtr& ring, const std::vector<CycScalar>& entries);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }

  CycScalar& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const CycScalar& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const CycScalar& c) const;
  Matrix operator-() const;

  Matrix transpose() const;
  /// Kronecker product, index convention (i tensor j) -> i*b.rows + j.
  Matrix kron(const Matrix& b) const;
  /// Horizontal and vertical stacking.
  Matrix hstack(const Matrix& b) const;
  Matrix vstack(const Matrix& b) const;
  Matrix submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const;

  size_t rank() const;
  /// Reduced row echelon form (deterministic).
  Matrix rref() const;
  /// Columns form the echelon-canonical basis of the null space.
  Matrix kernel_basis() const;
  /// x with (*this) * x = b when consistent; echelon-canonical particular
  /// solution (free variables zero). nullopt when inconsistent.
  std::optional<Matrix> solve(const Matrix& b) const;
  /// (pi, iota): pi surjects onto a complement of the column space, iota is a
  /// fixed section with pi * iota = identity and pi * (*this) = 0.
  std::pair<Matrix, Matrix> cokernel_projection() const;
  /// Square inverse; fails with not_invertible when singular.
  Matrix inverse() const;

  /// True when the matrix equals c * identity for some scalar c (returned).
  std::optional<CycScalar> as_scalar_multiple_of_identity() const;

  /// Columns of b that are in the column span of *this get coefficients;
  /// convenience for span membership tests.
  bool spans_column(const Matrix& v) const;

private:
  RingPtr ring_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<CycScalar> e_;

  void check_ring(const Matrix& o) const;
  // In-place RREF of an augmented matrix; returns pivot columns.
  static std::vector<size_t> rref_in_place(Matrix& m, size_t limit_cols);

  friend Matrix rref_augmented(Matrix m, size_t limit, std::vector<size_t>* pivots);
};

} // namespace mtc
