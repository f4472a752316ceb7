#pragma once

// Reference computations used only by the tests. Each is built from a
// different method than the code under test.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "condgrowth/linalg.hpp"

namespace oracle {

// Adaptive Simpson quadrature on [a, b].
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson_step(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

// e^{-z} I_ν(z) for any real ν, using I_{-ν} = I_ν + (2/π) sin(νπ) K_ν for ν < 0.
inline double scaled_cyl_bessel_i(double nu, double z) {
  if (nu >= 0.0) return std::cyl_bessel_i(nu, z) * std::exp(-z);
  const double mu = -nu;
  return (std::cyl_bessel_i(mu, z) + 2.0 / M_PI * std::sin(mu * M_PI) * std::cyl_bessel_k(mu, z)) * std::exp(-z);
}

// Q_M(α, β) from its defining integral, α > 0. The integrand is written with
// the exponentially scaled Bessel factor to stay finite.
inline double marcum_integral(double order, double alpha, double beta) {
  auto f = [&](double x) {
    if (x == 0.0) return 0.0;
    const double scaled = scaled_cyl_bessel_i(order - 1.0, alpha * x);
    return std::pow(x / alpha, order - 1.0) * x * std::exp(-0.5 * (x - alpha) * (x - alpha)) * scaled;
  };
  const double hi = std::max(beta, alpha) + 40.0;
  return integrate(f, beta, hi);
}

// Noncentral χ² CDF from quadrature of its density.
inline double ncx2_cdf_quadrature(double k, double lambda, double x) {
  auto f = [&](double t) {
    if (t == 0.0) return 0.0;
    return 0.5 * std::exp(-0.5 * (t + lambda)) * std::pow(t / lambda, 0.25 * k - 0.5) *
           std::cyl_bessel_i(0.5 * k - 1.0, std::sqrt(lambda * t));
  };
  return integrate(f, 0.0, x);
}

// 30-term direct series for I_ν(t).
inline double bessel_series(double nu, double t, int terms = 30) {
  double sum = 0.0;
  for (int n = 0; n < terms; ++n) {
    sum += std::exp((2.0 * n + nu) * std::log(0.5 * t) - std::lgamma(n + 1.0) - std::lgamma(nu + n + 1.0));
  }
  return sum;
}

inline Eigen::MatrixXd to_eigen(const condgrowth::linalg::DenseMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
  return m;
}

// Singular values (descending) from the eigenvalues of the Gram matrix.
inline std::vector<double> gram_singular_values(const condgrowth::linalg::DenseMatrix& a) {
  const Eigen::MatrixXd m = to_eigen(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.transpose() * m);
  std::vector<double> out;
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  return out;
}

// Singular values (descending) from Eigen's two-sided Jacobi SVD.
inline std::vector<double> jacobi_svd_values(const condgrowth::linalg::DenseMatrix& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

inline double eigen_cond(const condgrowth::linalg::DenseMatrix& a) {
  const auto s = jacobi_svd_values(a);
  return s.front() / s.back();
}

// Random test data, independent of the library's own streams.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double normal() { return std::normal_distribution<double>()(engine); }
  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(engine); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(engine); }

  condgrowth::linalg::DenseMatrix gaussian(std::size_t rows, std::size_t cols) {
    std::vector<double> d(rows * cols);
    for (auto& v : d) v = normal();
    return condgrowth::linalg::DenseMatrix(rows, cols, std::move(d));
  }
  std::vector<double> vec(std::size_t m, double scale = 1.0) {
    std::vector<double> v(m);
    for (auto& x : v) x = scale * normal();
    return v;
  }
  // Orthonormal columns from Eigen's Householder QR of a Gaussian matrix.
  condgrowth::linalg::DenseMatrix orthonormal(std::size_t rows, std::size_t cols) {
    const Eigen::MatrixXd g = to_eigen(gaussian(rows, cols));
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ() * Eigen::MatrixXd::Identity(rows, cols);
    condgrowth::linalg::DenseMatrix out(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i) out(i, j) = q(i, j);
    return out;
  }
  condgrowth::linalg::DenseMatrix unit_columns(std::size_t rows, std::size_t cols) {
    auto b = gaussian(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      const double n = condgrowth::linalg::norm2(b.col(j));
      for (auto& v : b.col(j)) v /= n;
    }
    return b;
  }
};

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace oracle
