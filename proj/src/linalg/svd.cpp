#include <algorithm>
#include <cmath>
#include <functional>

#include "householder.hpp"

namespace condgrowth::linalg {

namespace detail {

std::vector<double> jacobi_singular_values(DenseMatrix work) {
  const std::size_t n = work.cols();
  constexpr double tol = 1e-15;
  constexpr int max_sweeps = 80;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto up = work.col(p);
        auto uq = work.col(q);
        const double alpha = dot(up, up);
        const double beta = dot(uq, uq);
        const double gamma = dot(up, uq);
        if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < up.size(); ++i) {
          const double a = up[i];
          const double b = uq[i];
          up[i] = c * a - s * b;
          uq[i] = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = norm2(work.col(j));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace detail

SingularSpectrum singular_values(const DenseMatrix& a) {
  if (!std::all_of(a.data().begin(), a.data().end(), [](double v) { return std::isfinite(v); })) {
    throw NonFiniteError("singular_values: entries must be finite");
  }
  if (a.cols() == 0) return {};
  if (a.rows() < a.cols()) {
    auto sv = singular_values(a.transpose()).values;
    sv.resize(a.cols(), 0.0);
    return {std::move(sv)};
  }
  // Triangularize first so the Jacobi sweeps run on an n×n block.
  auto f = detail::householder_factor(a);
  return {detail::jacobi_singular_values(std::move(f.r))};
}

double cond(const DenseMatrix& a) {
  const auto sv = singular_values(a);
  if (sv.values.empty() || sv.max() == 0.0 || sv.min() <= kRankTolerance * sv.max()) {
    throw SingularMatrixError("cond: matrix is singular to working tolerance");
  }
  return sv.max() / sv.min();
}

}  // namespace condgrowth::linalg
