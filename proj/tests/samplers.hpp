#pragma once

// Random instance generators for the bound sweeps. Shared by the unit tests
// and the acceptance binary so both exercise the same distributions.

#include <cmath>

#include "condgrowth/bounds.hpp"
#include "oracles.hpp"

namespace samplers {

using condgrowth::linalg::DenseMatrix;
using condgrowth::linalg::Vector;

struct SplitInstance {
  DenseMatrix b;
  Vector x;  // in span(B)^⊥
  Vector y;
  double gamma = 1.0;
};

// B with unit columns, x ⊥ span(B) with ||x|| log-uniform on [0.1, 10],
// y Gaussian with ||y|| / ||x|| log-uniform on [1e-3, 1], γ log-uniform on [0.1, 10].
inline SplitInstance split_instance(oracle::Rng& rng) {
  const auto m = static_cast<std::size_t>(rng.integer(3, 12));
  const auto n = static_cast<std::size_t>(rng.integer(1, static_cast<int>(m) - 1));
  SplitInstance s;
  s.b = rng.unit_columns(m, n);
  const auto q = condgrowth::linalg::householder_qr(s.b).q;
  s.x = condgrowth::linalg::project_perp(q, rng.vec(m));
  const double xn = rng.log_uniform(0.1, 10.0);
  const double scale_x = xn / condgrowth::linalg::norm2(s.x);
  for (auto& v : s.x) v *= scale_x;
  s.y = rng.vec(m);
  const double scale_y = xn * rng.log_uniform(1e-3, 1.0) / condgrowth::linalg::norm2(s.y);
  for (auto& v : s.y) v *= scale_y;
  s.gamma = rng.log_uniform(0.1, 10.0);
  return s;
}

// Smallest admissible ε for the instance, times 1 + U(0, 0.5).
inline double eps_for(const SplitInstance& s, oracle::Rng& rng) {
  Vector sum(s.x.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = s.x[i] + s.y[i];
  const double ratio = condgrowth::linalg::norm2(condgrowth::linalg::transpose_times(s.b, s.y)) /
                       condgrowth::linalg::norm2(sum);
  return std::sqrt(1.0 + 4.0 * ratio * ratio) * (1.0 + rng.uniform(0.0, 0.5));
}

struct ColumnInstance {
  DenseMatrix b;
  Vector c;
  double gamma = 1.0;
};

// Gaussian B (m ≤ 40, n ≤ 12), Gaussian c scaled by a log-uniform factor, γ log-uniform on [1e-2, 1e2].
inline ColumnInstance column_instance(oracle::Rng& rng, bool unit_columns) {
  const auto m = static_cast<std::size_t>(rng.integer(3, 40));
  const auto n = static_cast<std::size_t>(rng.integer(1, std::min(12, static_cast<int>(m) - 1)));
  ColumnInstance s;
  s.b = unit_columns ? rng.unit_columns(m, n) : rng.gaussian(m, n);
  s.c = rng.vec(m, rng.log_uniform(0.1, 10.0));
  s.gamma = rng.log_uniform(1e-2, 1e2);
  return s;
}

}  // namespace samplers
