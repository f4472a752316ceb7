#pragma once

#include "condgrowth/linalg.hpp"

namespace condgrowth::linalg::detail {

/// Compact Householder factorization: unit reflector vectors (stored in the
/// trailing rows of each column) and the n×n triangle R. No rank check.
struct HouseholderFactors {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Vector> reflectors;  // reflectors[k] has length rows - k; all-zero means identity
  DenseMatrix r;
};

HouseholderFactors householder_factor(const DenseMatrix& a);

/// Q · [I_k; 0] for k = `columns` (k = rows gives the full orthogonal factor).
DenseMatrix form_q(const HouseholderFactors& f, std::size_t columns);

/// Flips signs so diag(R) ≥ 0, adjusting the matching columns of Q.
void normalize_signs(DenseMatrix& q, DenseMatrix& r);

/// Singular values of a square upper-triangular or general small matrix by
/// one-sided Jacobi; descending.
std::vector<double> jacobi_singular_values(DenseMatrix work);

}  // namespace condgrowth::linalg::detail
