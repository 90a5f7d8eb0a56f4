#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace ivm {

using RowVec = std::vector<Rational>;

/// Dense exact matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<RowVec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  RowVec row(std::size_t r) const;

  Matrix operator*(const Matrix& o) const;
  Matrix transpose() const;
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Incrementally maintained reduced row-echelon basis of a row space in a
/// fixed number of columns. Pivots are always the leftmost nonzero entry, so
/// the result depends only on the span, not on insertion order.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}

  /// Returns true if the row enlarged the span.
  bool insert(RowVec row);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  /// Reduces a row against the current basis; a zero result means membership.
  RowVec reduce(RowVec row) const;
  bool contains(const RowVec& row) const;

  /// Rows in fully reduced form, sorted by pivot column.
  std::vector<RowVec> reduced_rows() const;
  std::vector<std::size_t> pivots() const;

  /// Basis of { x : row . x = 0 for every row }, one vector per free column,
  /// normalized to 1 at that column.
  std::vector<RowVec> nullspace() const;

 private:
  std::size_t cols_;
  std::vector<RowVec> rows_;          // each normalized: pivot entry 1
  std::vector<std::size_t> pivot_;    // pivot column of rows_[i]
};

std::size_t rank(const Matrix& m);
std::vector<RowVec> nullspace(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
/// Solves m x = b; nullopt when inconsistent. Free variables are set to 0.
std::optional<RowVec> solve(const Matrix& m, const RowVec& b);

bool is_zero(const RowVec& v);

}  // namespace ivm
