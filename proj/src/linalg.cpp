#include "linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ivm {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<RowVec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RowVec Matrix::row(std::size_t r) const {
  return RowVec(data_.begin() + static_cast<long>(r * cols_),
                data_.begin() + static_cast<long>((r + 1) * cols_));
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
  Matrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool is_zero(const RowVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

RowVec RowEchelon::reduce(RowVec row) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational f = row[pivot_[i]];
    if (f == 0) continue;
    const RowVec& b = rows_[i];
    for (std::size_t c = pivot_[i]; c < cols_; ++c)
      if (b[c] != 0) row[c] -= f * b[c];
  }
  return row;
}

bool RowEchelon::contains(const RowVec& row) const { return is_zero(reduce(row)); }

bool RowEchelon::insert(RowVec row) {
  if (row.size() != cols_) throw std::invalid_argument("RowEchelon::insert: wrong width");
  row = reduce(std::move(row));
  std::size_t p = 0;
  while (p < cols_ && row[p] == 0) ++p;
  if (p == cols_) return false;
  const Rational inv = 1 / row[p];
  for (std::size_t c = p; c < cols_; ++c) row[c] *= inv;
  // keep fully reduced: clear column p from existing rows
  for (auto& b : rows_) {
    const Rational f = b[p];
    if (f == 0) continue;
    for (std::size_t c = p; c < cols_; ++c)
      if (row[c] != 0) b[c] -= f * row[c];
  }
  rows_.push_back(std::move(row));
  pivot_.push_back(p);
  return true;
}

std::vector<std::size_t> RowEchelon::pivots() const {
  auto p = pivot_;
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<RowVec> RowEchelon::reduced_rows() const {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivot_[a] < pivot_[b]; });
  std::vector<RowVec> out;
  out.reserve(order.size());
  for (auto i : order) out.push_back(rows_[i]);
  return out;
}

std::vector<RowVec> RowEchelon::nullspace() const {
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivot_) is_pivot[p] = true;
  std::vector<RowVec> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    RowVec v(cols_);
    v[free] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) v[pivot_[i]] = -rows_[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const Matrix& m) {
  RowEchelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.rank();
}

std::vector<RowVec> nullspace(const Matrix& m) {
  RowEchelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.nullspace();
}

std::optional<RowVec> solve(const Matrix& m, const RowVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs size mismatch");
  const std::size_t n = m.cols();
  RowEchelon e(n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    RowVec row = m.row(r);
    row.push_back(b[r]);
    e.insert(std::move(row));
  }
  RowVec x(n);
  for (const auto& row : e.reduced_rows()) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    if (p == n) return std::nullopt;
    x[p] = row[n];
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  RowEchelon e(2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    RowVec row = m.row(r);
    row.resize(2 * n);
    row[n + r] = 1;
    e.insert(std::move(row));
  }
  auto rows = e.reduced_rows();
  if (rows.size() != n) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 1) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
  }
  return inv;
}

}  // namespace ivm
