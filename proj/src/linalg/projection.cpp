#include <cmath>
#include <stdexcept>

#include "condgrowth/linalg.hpp"

namespace condgrowth::linalg {

namespace {

void check_basis(const DenseMatrix& q, std::span<const double> v, const char* fn) {
  if (v.size() != q.rows()) throw DimensionError(std::string(fn) + ": vector length differs from row count");
  if (orthogonality_defect(q) > 1e-8) throw std::invalid_argument(std::string(fn) + ": Q is not orthonormal");
}

void subtract_projection(const DenseMatrix& q, Vector& v) {
  for (std::size_t j = 0; j < q.cols(); ++j) {
    auto qj = q.col(j);
    const double s = dot(qj, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= s * qj[i];
  }
}

}  // namespace

Vector project_onto(const DenseMatrix& q, std::span<const double> v) {
  check_basis(q, v, "project_onto");
  return q * transpose_times(q, v);
}

Vector project_perp(const DenseMatrix& q, std::span<const double> v) {
  check_basis(q, v, "project_perp");
  Vector out(v.begin(), v.end());
  const Vector coeff = transpose_times(q, v);
  for (std::size_t j = 0; j < q.cols(); ++j) {
    auto qj = q.col(j);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coeff[j] * qj[i];
  }
  return out;
}

LeastSquaresSolution ls_residual(const DenseMatrix& b, std::span<const double> c) {
  if (c.size() != b.rows()) throw DimensionError("ls_residual: right-hand side length differs from row count");
  const QrFactors qr = householder_qr(b);
  const Vector qtc = transpose_times(qr.q, c);

  const std::size_t n = b.cols();
  Vector y(qtc);
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) y[ii] -= qr.r(ii, j) * y[j];
    y[ii] /= qr.r(ii, ii);
  }

  Vector r(c.begin(), c.end());
  subtract_projection(qr.q, r);
  subtract_projection(qr.q, r);
  return {std::move(y), std::move(r)};
}

}  // namespace condgrowth::linalg
