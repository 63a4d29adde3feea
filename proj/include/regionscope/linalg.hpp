// Copyright 2026 The regionscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "regionscope/rational.hpp"

namespace regionscope {

using Vector = std::vector<Rational>;

/// Dense row-major rational matrix. Shape is fixed at construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Throws DimensionError when the rows are ragged.
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector row_vector(std::size_t r) const;
  Vector column_vector(std::size_t c) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Vector operator*(const Matrix& m, const Vector& v);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& m);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& v);

/// Exact rank over the rationals. All vectors must share a length; empty -> 0.
std::size_t linear_rank(const std::vector<Vector>& vectors);
std::size_t rank(const Matrix& m);

/// Rows of `m` forming a basis of its row space (first maximal independent
/// subset in row order).
std::vector<std::size_t> independent_rows(const Matrix& m);

/// Inverse of a square matrix; std::nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Some solution of m x = rhs, or std::nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);

Rational squared_norm(const Vector& v);
Rational l1_norm(std::span<const Rational> v);
bool is_zero(std::span<const Rational> v);

/// x -> linear * x + offset.
struct AffineMap {
  Matrix linear;
  Vector offset;

  static AffineMap identity(std::size_t n);
  /// Throws DimensionError when offset length differs from the row count.
  static AffineMap make(Matrix linear, Vector offset);

  std::size_t input_dim() const { return linear.cols(); }
  std::size_t output_dim() const { return linear.rows(); }
  Vector apply(const Vector& x) const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// outer ∘ inner. Throws DimensionError with both shapes in the message.
AffineMap affine_compose(const AffineMap& outer, const AffineMap& inner);

}  // namespace regionscope
