#include <algorithm>
#include <cmath>
#include <string>

#include "householder.hpp"

namespace condgrowth::linalg {

namespace detail {

HouseholderFactors householder_factor(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) throw DimensionError("QR: matrix must have rows >= cols");
  HouseholderFactors f{m, n, {}, DenseMatrix(n, n)};
  f.reflectors.reserve(n);
  DenseMatrix work = a;

  for (std::size_t k = 0; k < n; ++k) {
    auto colk = work.col(k).subspan(k);
    Vector v(colk.begin(), colk.end());
    const double alpha = norm2(v);
    if (alpha == 0.0) {
      f.reflectors.emplace_back(m - k, 0.0);
      continue;
    }
    const double beta = v[0] > 0.0 ? -alpha : alpha;
    v[0] -= beta;
    const double vnorm = norm2(v);
    for (double& x : v) x /= vnorm;
    // H = I - 2vvᵀ applied to the trailing block.
    for (std::size_t j = k; j < n; ++j) {
      auto cj = work.col(j).subspan(k);
      const double s = 2.0 * dot(v, cj);
      for (std::size_t i = 0; i < v.size(); ++i) cj[i] -= s * v[i];
    }
    work(k, k) = beta;
    for (std::size_t i = k + 1; i < m; ++i) work(i, k) = 0.0;
    f.reflectors.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) f.r(i, j) = work(i, j);
  return f;
}

DenseMatrix form_q(const HouseholderFactors& f, std::size_t columns) {
  DenseMatrix q(f.rows, columns);
  for (std::size_t j = 0; j < columns; ++j) q(j, j) = 1.0;
  for (std::size_t kk = f.reflectors.size(); kk-- > 0;) {
    const Vector& v = f.reflectors[kk];
    for (std::size_t j = 0; j < columns; ++j) {
      auto cj = q.col(j).subspan(kk);
      const double s = 2.0 * dot(v, cj);
      if (s == 0.0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) cj[i] -= s * v[i];
    }
  }
  return q;
}

void normalize_signs(DenseMatrix& q, DenseMatrix& r) {
  for (std::size_t i = 0; i < r.rows(); ++i) {
    if (r(i, i) >= 0.0) continue;
    for (std::size_t j = i; j < r.cols(); ++j) r(i, j) = -r(i, j);
    for (double& x : q.col(i)) x = -x;
  }
}

}  // namespace detail

namespace {

void check_rank(const DenseMatrix& r, const char* fn) {
  if (r.cols() == 0) return;
  const auto sv = detail::jacobi_singular_values(r);
  if (sv.front() == 0.0 || sv.back() <= kRankTolerance * sv.front()) {
    throw RankDeficientError(std::string(fn) + ": matrix is numerically rank deficient");
  }
}

}  // namespace

QrFactors householder_qr(const DenseMatrix& a) {
  auto f = detail::householder_factor(a);
  QrFactors out{detail::form_q(f, a.cols()), std::move(f.r)};
  detail::normalize_signs(out.q, out.r);
  check_rank(out.r, "householder_qr");
  return out;
}

QrFactors mgs_qr(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) throw DimensionError("QR: matrix must have rows >= cols");
  QrFactors out{a, DenseMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    auto v = out.q.col(j);
    for (std::size_t i = 0; i < j; ++i) {
      auto qi = out.q.col(i);
      const double rij = dot(qi, v);
      out.r(i, j) = rij;
      for (std::size_t t = 0; t < m; ++t) v[t] -= rij * qi[t];
    }
    const double rjj = norm2(v);
    out.r(j, j) = rjj;
    if (rjj == 0.0) throw RankDeficientError("mgs_qr: matrix is numerically rank deficient");
    for (double& x : v) x /= rjj;
  }
  check_rank(out.r, "mgs_qr");
  return out;
}

DenseMatrix orthonormal_complement(const DenseMatrix& q) {
  if (q.cols() > q.rows()) throw DimensionError("orthonormal_complement: Q must have rows >= cols");
  if (orthogonality_defect(q) > 1e-8) {
    throw std::invalid_argument("orthonormal_complement: Q is not orthonormal");
  }
  const auto f = detail::householder_factor(q);
  const DenseMatrix full = detail::form_q(f, q.rows());
  const std::size_t extra = q.rows() - q.cols();
  DenseMatrix out(q.rows(), extra);
  for (std::size_t j = 0; j < extra; ++j) {
    auto src = full.col(q.cols() + j);
    std::copy(src.begin(), src.end(), out.col(j).begin());
  }
  return out;
}

}  // namespace condgrowth::linalg
