#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dmuss/gf.hpp"

namespace dmuss::linalg {

using gf::Element;
using gf::Field;
using gf::Vector;

/// Dense row-major matrix of field symbols.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Builds from nested rows; every row must have the same length.
  static Matrix from_rows(const Field& f,
                          const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector column(std::size_t c) const;

  /// Rows in the given order (duplicates allowed).
  Matrix select_rows(std::span<const std::size_t> rows) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Vector apply(const Field& f, const Matrix& a, std::span<const Element> x);
Matrix add(const Field& f, const Matrix& a, const Matrix& b);
/// [top; bottom]. Column counts must agree.
Matrix stack(const Matrix& top, const Matrix& bottom);
/// [left, right]. Row counts must agree.
Matrix concat(const Matrix& left, const Matrix& right);
/// diag(d) * m.
Matrix scale_rows(const Field& f, std::span<const Element> d, const Matrix& m);

/// Reduced row echelon form by Gaussian elimination, first-nonzero pivoting,
/// columns scanned left to right.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;  // ascending
};
Echelon rref(const Field& f, Matrix a);

std::size_t rank(const Field& f, const Matrix& a);
Element det(const Field& f, const Matrix& a);

/// Unique b with A b = s. Throws Error{kSingular} if A is singular and
/// Error{kShapeMismatch} if shapes disagree.
Vector solve(const Field& f, const Matrix& a, std::span<const Element> s);

/// Basis of {v : A v = 0}. One vector per free column of rref(A), in
/// increasing column order; each carries a 1 at its own free column and 0 at
/// the other free columns.
struct NullBasis {
  std::size_t dim = 0;
  std::vector<Vector> vectors;

  /// Basis vectors as the columns of a (cols x dim) matrix.
  Matrix as_columns(std::size_t length) const;
};
NullBasis null_space(const Field& f, const Matrix& a);

/// The (n - m) x n matrix with entry (i, j) = (gamma^(m + i - 1))^j for
/// 1-based i in [1, n - m] and j in [1, n]. Throws Error{kBadShape} if m >= n.
Matrix build_B(const Field& f, std::size_t m, std::size_t n);

/// Tracks the row space of a growing set of vectors. Adding a vector reports
/// whether it increased the rank.
class RowSpace {
 public:
  RowSpace(const Field& f, std::size_t width) : f_(&f), width_(width) {}

  bool add(std::span<const Element> v);
  bool contains(std::span<const Element> v) const;
  std::size_t rank() const noexcept { return basis_.size(); }

 private:
  Vector reduce(std::span<const Element> v) const;

  const Field* f_;
  std::size_t width_;
  std::vector<Vector> basis_;            // each row normalised at its pivot
  std::vector<std::size_t> pivots_;
};

}  // namespace dmuss::linalg
