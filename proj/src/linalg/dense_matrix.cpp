#include "condgrowth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace condgrowth::linalg {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> col_major)
    : rows_(rows), cols_(cols), data_(std::move(col_major)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("DenseMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(data_.size()));
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw NonFiniteError("DenseMatrix: entries must be finite");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t ncols = rows.front().size();
  std::vector<double> col_major(rows.size() * ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) throw DimensionError("DenseMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < ncols; ++j) col_major[j * rows.size() + i] = rows[i][j];
  }
  return DenseMatrix(rows.size(), ncols, std::move(col_major));
}

DenseMatrix DenseMatrix::from_columns(const std::vector<Vector>& columns) {
  if (columns.empty()) return {};
  const std::size_t nrows = columns.front().size();
  std::vector<double> col_major;
  col_major.reserve(nrows * columns.size());
  for (const auto& c : columns) {
    if (c.size() != nrows) throw DimensionError("DenseMatrix::from_columns: columns differ in length");
    col_major.insert(col_major.end(), c.begin(), c.end());
  }
  return DenseMatrix(nrows, columns.size(), std::move(col_major));
}

DenseMatrix DenseMatrix::leading_columns(std::size_t count) const {
  if (count > cols_) throw DimensionError("leading_columns: count exceeds column count");
  DenseMatrix out(rows_, count);
  std::copy_n(data_.begin(), rows_ * count, out.data_.begin());
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) out(j, i) = (*this)(i, j);
  return out;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto dst = out.col(j);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double s = b(k, j);
      if (s == 0.0) continue;
      auto src = a.col(k);
      for (std::size_t i = 0; i < a.rows(); ++i) dst[i] += s * src[i];
    }
  }
  return out;
}

Vector operator*(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector product: dimension mismatch");
  Vector out(a.rows(), 0.0);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    auto src = a.col(k);
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] += x[k] * src[i];
  }
  return out;
}

Vector transpose_times(const DenseMatrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) throw DimensionError("transpose product: dimension mismatch");
  Vector out(a.cols());
  for (std::size_t k = 0; k < a.cols(); ++k) out[k] = dot(a.col(k), x);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) {
  // Scaled to avoid overflow for large entries.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) {
    const double t = x / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

double frobenius_norm(const DenseMatrix& a) { return norm2(a.data()); }

double orthogonality_defect(const DenseMatrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      const double g = dot(a.col(i), a.col(j)) - (i == j ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(g));
    }
  }
  return worst;
}

DenseMatrix append_column(const DenseMatrix& b, std::span<const double> c, double gamma) {
  if (c.size() != b.rows()) throw DimensionError("append_column: column length differs from row count");
  std::vector<double> entries(b.data().begin(), b.data().end());
  for (double v : c) entries.push_back(gamma * v);
  return DenseMatrix(b.rows(), b.cols() + 1, std::move(entries));
}

}  // namespace condgrowth::linalg
