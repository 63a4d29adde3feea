// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "regionscope/linalg.hpp"

#include <string>
#include <utility>

#include "regionscope/errors.hpp"

namespace regionscope {
namespace {

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_length(const Vector& a, const Vector& b, const char* op) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(op) + ": vector lengths " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()) + " differ");
  }
}

// In-place row echelon form; returns pivot columns.
std::vector<std::size_t> echelon(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    }
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      if (sgn(m(r, col)) == 0) continue;
      const Rational factor = m(r, col) / m(row, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      throw DimensionError("ragged matrix: row " + std::to_string(r) + " has " +
                           std::to_string(rows[r].size()) + " entries, expected " +
                           std::to_string(m.cols()));
    }
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return Vector(s.begin(), s.end());
}

Vector Matrix::column_vector(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0) acc += a[i] * b[i];
  }
  return acc;
}

Vector operator*(const Matrix& m, const Vector& v) {
  if (m.cols() != v.size()) {
    throw DimensionError("matrix-vector product: matrix " + shape(m.rows(), m.cols()) +
                         " with vector of length " + std::to_string(v.size()));
  }
  Vector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = dot(m.row(r), v);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: " + shape(a.rows(), a.cols()) + " times " +
                         shape(b.rows(), b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

Matrix operator*(const Rational& s, const Matrix& m) {
  Matrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) *= s;
  return out;
}

Vector operator+(const Vector& a, const Vector& b) {
  require_same_length(a, b, "vector sum");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_length(a, b, "vector difference");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector operator*(const Rational& s, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

std::size_t linear_rank(const std::vector<Vector>& vectors) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(vectors));
}

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return echelon(work).size();
}

std::vector<std::size_t> independent_rows(const Matrix& m) {
  std::vector<std::size_t> chosen;
  std::vector<Vector> basis;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    basis.push_back(m.row_vector(r));
    if (linear_rank(basis) == basis.size()) {
      chosen.push_back(r);
    } else {
      basis.pop_back();
    }
  }
  return chosen;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("inverse: matrix " + shape(m.rows(), m.cols()) + " is not square");
  }
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && sgn(aug(p, col)) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != col) {
      for (std::size_t c = 0; c < 2 * n; ++c) std::swap(aug(p, c), aug(col, c));
    }
    const Rational pivot = aug(col, col);
    for (std::size_t c = 0; c < 2 * n; ++c) aug(col, c) /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(aug(r, col)) == 0) continue;
      const Rational factor = aug(r, col);
      for (std::size_t c = 0; c < 2 * n; ++c) aug(r, c) -= factor * aug(col, c);
    }
  }
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
  if (rhs.size() != m.rows()) {
    throw DimensionError("solve: matrix " + shape(m.rows(), m.cols()) + " with rhs of length " +
                         std::to_string(rhs.size()));
  }
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  const auto pivots = echelon(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  // back substitution, free variables at zero
  Vector x(m.cols());
  for (std::size_t i = pivots.size(); i-- > 0;) {
    const std::size_t col = pivots[i];
    Rational acc = aug(i, m.cols());
    for (std::size_t c = col + 1; c < m.cols(); ++c) acc -= aug(i, c) * x[c];
    x[col] = acc / aug(i, col);
  }
  return x;
}

Rational squared_norm(const Vector& v) { return dot(v, v); }

Rational l1_norm(std::span<const Rational> v) {
  Rational acc = 0;
  for (const auto& x : v) acc += abs(x);
  return acc;
}

bool is_zero(std::span<const Rational> v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

AffineMap AffineMap::identity(std::size_t n) { return {Matrix::identity(n), Vector(n)}; }

AffineMap AffineMap::make(Matrix linear, Vector offset) {
  if (linear.rows() != offset.size()) {
    throw DimensionError("affine map: linear part " + shape(linear.rows(), linear.cols()) +
                         " with offset of length " + std::to_string(offset.size()));
  }
  return {std::move(linear), std::move(offset)};
}

Vector AffineMap::apply(const Vector& x) const { return linear * x + offset; }

AffineMap affine_compose(const AffineMap& outer, const AffineMap& inner) {
  if (outer.input_dim() != inner.output_dim()) {
    throw DimensionError("affine_compose: outer map expects input dimension " +
                         std::to_string(outer.input_dim()) + " but inner map produces " +
                         std::to_string(inner.output_dim()));
  }
  return {outer.linear * inner.linear, outer.linear * inner.offset + outer.offset};
}

}  // namespace regionscope
