#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace condgrowth::linalg {

using Vector = std::vector<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input has (numerical) rank below its column count.
class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Entries with |value| outside the finite range.
class NonFiniteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// σ_min ≤ kRankTolerance · σ_max is treated as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/// Real matrix stored column-major. Zero columns are allowed (an empty basis).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  /// Takes column-major entries; throws DimensionError on a size mismatch and
  /// NonFiniteError on NaN/inf.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> col_major);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static DenseMatrix from_columns(const std::vector<Vector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const noexcept { return {data_.data() + j * rows_, rows_}; }

  std::span<const double> data() const noexcept { return data_; }

  /// Leading `count` columns.
  DenseMatrix leading_columns(std::size_t count) const;
  DenseMatrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);
/// Aᵀx.
Vector transpose_times(const DenseMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double frobenius_norm(const DenseMatrix& a);
/// max |AᵀA - I|.
double orthogonality_defect(const DenseMatrix& a);

/// Thin factorization A = QR of a full-rank tall matrix.
struct QrFactors {
  DenseMatrix q;  ///< m×n with orthonormal columns
  DenseMatrix r;  ///< n×n upper triangular with nonnegative diagonal
};

/// Householder QR. Throws RankDeficientError if σ_min(R) ≤ 1e-10·σ_max(R).
QrFactors householder_qr(const DenseMatrix& a);

/// Modified Gram-Schmidt; same contract, but the orthogonality of Q degrades
/// roughly like κ(A)·u on ill-conditioned input.
QrFactors mgs_qr(const DenseMatrix& a);

/// Singular values in descending order; one value per column, with zeros when
/// rows < cols. One-sided Jacobi.
struct SingularSpectrum {
  std::vector<double> values;

  double max() const { return values.empty() ? 0.0 : values.front(); }
  double min() const { return values.empty() ? 0.0 : values.back(); }
};

SingularSpectrum singular_values(const DenseMatrix& a);

/// σ_max / σ_min; throws SingularMatrixError when σ_min ≤ 1e-10·σ_max.
double cond(const DenseMatrix& a);

/// Q(Qᵀv). Q must be orthonormal to 1e-8.
Vector project_onto(const DenseMatrix& q, std::span<const double> v);
/// v - Q(Qᵀv).
Vector project_perp(const DenseMatrix& q, std::span<const double> v);

/// Orthonormal basis of span(Q)^⊥ (m×(m-n)), taken from the trailing columns
/// of the full Householder factor of Q.
DenseMatrix orthonormal_complement(const DenseMatrix& q);

struct LeastSquaresSolution {
  Vector y;  ///< argmin ||c - By||
  Vector r;  ///< c - By
};

LeastSquaresSolution ls_residual(const DenseMatrix& b, std::span<const double> c);

/// [B, γc].
DenseMatrix append_column(const DenseMatrix& b, std::span<const double> c, double gamma);

}  // namespace condgrowth::linalg
