#include "dmuss/linalg.hpp"

#include <string>
#include <utility>

#include "dmuss/error.hpp"

namespace dmuss::linalg {
namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// In-place forward elimination to reduced row echelon form. Returns the pivot
// columns and the determinant sign/scale bookkeeping used by det().
struct Reduction {
  std::vector<std::size_t> pivots;
  bool swapped_odd = false;
  Element scale{1};  // product of pivots divided out
};

Reduction reduce_in_place(const Field& f, Matrix& a, bool full_reduce) {
  Reduction out;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t r = pivot_row;
    while (r < a.rows() && a(r, col).value == 0) ++r;
    if (r == a.rows()) continue;
    if (r != pivot_row) {
      auto x = a.row(r);
      auto y = a.row(pivot_row);
      std::swap_ranges(x.begin(), x.end(), y.begin());
      out.swapped_odd = !out.swapped_odd;
    }
    const Element p = a(pivot_row, col);
    out.scale = f.mul(out.scale, p);
    const Element p_inv = f.inv(p);
    auto prow = a.row(pivot_row);
    for (std::size_t c = col; c < a.cols(); ++c) prow[c] = f.mul(prow[c], p_inv);

    const std::size_t start = full_reduce ? 0 : pivot_row + 1;
    for (std::size_t i = start; i < a.rows(); ++i) {
      if (i == pivot_row) continue;
      const Element factor = a(i, col);
      if (factor.value == 0) continue;
      auto irow = a.row(i);
      for (std::size_t c = col; c < a.cols(); ++c) {
        irow[c] = f.sub(irow[c], f.mul(factor, prow[c]));
      }
    }
    out.pivots.push_back(col);
    ++pivot_row;
  }
  return out;
}

}  // namespace

Matrix Matrix::from_rows(const Field& f,
                         const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(Errc::kShapeMismatch, "ragged rows in matrix literal");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.element(rows[r][c]);
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Element{1};
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix m(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), m.row(i).begin());
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::kShapeMismatch, "multiply " + shape(a) + " by " + shape(b));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Element aik = a(i, k);
      if (aik.value == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
      }
    }
  }
  return out;
}

Vector apply(const Field& f, const Matrix& a, std::span<const Element> x) {
  if (a.cols() != x.size()) {
    throw Error(Errc::kShapeMismatch,
                "apply " + shape(a) + " to length " + std::to_string(x.size()));
  }
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Element acc{0};
    auto r = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) acc = f.add(acc, f.mul(r[j], x[j]));
    y[i] = acc;
  }
  return y;
}

Matrix add(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::kShapeMismatch, "add " + shape(a) + " and " + shape(b));
  }
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.add(a(r, c), b(r, c));
  return out;
}

Matrix stack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw Error(Errc::kShapeMismatch, "stack " + shape(top) + " on " + shape(bottom));
  }
  Matrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r)
    std::copy(top.row(r).begin(), top.row(r).end(), out.row(r).begin());
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    std::copy(bottom.row(r).begin(), bottom.row(r).end(),
              out.row(top.rows() + r).begin());
  return out;
}

Matrix concat(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) {
    throw Error(Errc::kShapeMismatch, "concat " + shape(left) + " with " + shape(right));
  }
  Matrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    auto dst = out.row(r);
    std::copy(left.row(r).begin(), left.row(r).end(), dst.begin());
    std::copy(right.row(r).begin(), right.row(r).end(), dst.begin() + left.cols());
  }
  return out;
}

Matrix scale_rows(const Field& f, std::span<const Element> d, const Matrix& m) {
  if (d.size() != m.rows()) {
    throw Error(Errc::kShapeMismatch, "diagonal length does not match " + shape(m));
  }
  Matrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (auto& e : out.row(r)) e = f.mul(d[r], e);
  return out;
}

Echelon rref(const Field& f, Matrix a) {
  Reduction red = reduce_in_place(f, a, /*full_reduce=*/true);
  return Echelon{std::move(a), std::move(red.pivots)};
}

std::size_t rank(const Field& f, const Matrix& a) {
  Matrix work = a;
  return reduce_in_place(f, work, /*full_reduce=*/false).pivots.size();
}

Element det(const Field& f, const Matrix& a) {
  if (!a.square()) throw Error(Errc::kShapeMismatch, "det of non-square " + shape(a));
  if (a.rows() == 0) return Element{1};
  Matrix work = a;
  Reduction red = reduce_in_place(f, work, /*full_reduce=*/false);
  if (red.pivots.size() < a.rows()) return Element{0};
  return red.swapped_odd ? f.neg(red.scale) : red.scale;
}

Vector solve(const Field& f, const Matrix& a, std::span<const Element> s) {
  if (!a.square() || a.rows() != s.size()) {
    throw Error(Errc::kShapeMismatch, "solve with " + shape(a) +
                                          " and rhs length " + std::to_string(s.size()));
  }
  const std::size_t n = a.rows();
  Matrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    std::copy(a.row(r).begin(), a.row(r).end(), aug.row(r).begin());
    aug(r, n) = s[r];
  }
  Reduction red = reduce_in_place(f, aug, /*full_reduce=*/true);
  if (red.pivots.size() < n || red.pivots.back() >= n) {
    throw Error(Errc::kSingular, "singular " + shape(a) + " system");
  }
  Vector b(n);
  for (std::size_t r = 0; r < n; ++r) b[r] = aug(r, n);
  return b;
}

Matrix NullBasis::as_columns(std::size_t length) const {
  Matrix m(length, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < length; ++r) m(r, c) = vectors[c][r];
  return m;
}

NullBasis null_space(const Field& f, const Matrix& a) {
  Echelon e = rref(f, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : e.pivot_columns) is_pivot[c] = true;

  NullBasis out;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.cols());
    v[free] = Element{1};
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) {
      v[e.pivot_columns[r]] = f.neg(e.reduced(r, free));
    }
    out.vectors.push_back(std::move(v));
  }
  out.dim = out.vectors.size();
  return out;
}

Matrix build_B(const Field& f, std::size_t m, std::size_t n) {
  if (m >= n) {
    throw Error(Errc::kBadShape,
                "B(m, n) needs m < n, got m=" + std::to_string(m) + " n=" + std::to_string(n));
  }
  Matrix b(n - m, n);
  for (std::size_t i = 0; i < n - m; ++i) {
    const Element base = f.gamma_pow(m + i);
    for (std::size_t j = 0; j < n; ++j) b(i, j) = f.pow(base, j + 1);
  }
  return b;
}

Vector RowSpace::reduce(std::span<const Element> v) const {
  Vector w(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Element factor = w[pivots_[i]];
    if (factor.value == 0) continue;
    for (std::size_t c = 0; c < width_; ++c) {
      w[c] = f_->sub(w[c], f_->mul(factor, basis_[i][c]));
    }
  }
  return w;
}

bool RowSpace::add(std::span<const Element> v) {
  if (v.size() != width_) throw Error(Errc::kShapeMismatch, "row width mismatch");
  Vector w = reduce(v);
  std::size_t pivot = 0;
  while (pivot < width_ && w[pivot].value == 0) ++pivot;
  if (pivot == width_) return false;
  const Element inv = f_->inv(w[pivot]);
  for (auto& e : w) e = f_->mul(e, inv);
  // Keep earlier rows reduced against the new pivot so reduce() stays a
  // single pass.
  for (auto& b : basis_) {
    const Element factor = b[pivot];
    if (factor.value == 0) continue;
    for (std::size_t c = 0; c < width_; ++c) b[c] = f_->sub(b[c], f_->mul(factor, w[c]));
  }
  basis_.push_back(std::move(w));
  pivots_.push_back(pivot);
  return true;
}

bool RowSpace::contains(std::span<const Element> v) const {
  if (v.size() != width_) throw Error(Errc::kShapeMismatch, "row width mismatch");
  Vector w = reduce(v);
  for (const auto& e : w)
    if (e.value != 0) return false;
  return true;
}

}  // namespace dmuss::linalg
