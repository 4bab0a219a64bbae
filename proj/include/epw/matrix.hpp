#pragma once

#include <vector>

#include "epw/field.hpp"

namespace epw {

/// Dense exact matrix, row-major.  Entries belong to the field passed to each
/// operation; a Matrix does not carry its field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static Matrix identity(const Field& F, size_t n);
  static Matrix zero(size_t rows, size_t cols) { return Matrix(rows, cols); }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Fel& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const Fel& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix mul(const Field& F, const Matrix& o) const;
  Matrix add(const Field& F, const Matrix& o) const;
  Matrix sub(const Field& F, const Matrix& o) const;
  Matrix scale(const Field& F, const Fel& c) const;
  std::vector<Fel> apply(const Field& F, const std::vector<Fel>& x) const;  // M * x

  bool is_zero(const Field& F) const;
  bool equals(const Field& F, const Matrix& o) const;
  bool is_symmetric(const Field& F) const;

  /// Rows i of [lo, hi).
  Matrix row_slice(size_t lo, size_t hi) const;
  void append_rows(const Matrix& o);

  Fel det(const Field& F) const;

  size_t rows_ = 0, cols_ = 0;
  std::vector<Fel> e_;
};

/// Reduced row echelon form; returns (rref, rank).
std::pair<Matrix, size_t> rref(const Field& F, const Matrix& m);
/// In-place variant, also reports pivot columns.
size_t rref_inplace(const Field& F, Matrix& m, std::vector<size_t>* pivots = nullptr);

size_t rank(const Field& F, const Matrix& m);

/// Right kernel {x : m x = 0} as an RREF basis matrix (rows span the kernel).
Matrix kernel_basis(const Field& F, const Matrix& m);

/// One solution of M x = b, if any.
std::optional<std::vector<Fel>> solve(const Field& F, const Matrix& m, const std::vector<Fel>& b);

Matrix inverse(const Field& F, const Matrix& m);

}  // namespace epw
