#include "condgrowth/random.hpp"

#include <cmath>

namespace condgrowth::sim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ tag) ^ index);
}

linalg::Vector gaussian_vector(int m, double sigma, RandomStream& stream) {
  linalg::Vector v(static_cast<std::size_t>(m));
  for (auto& x : v) x = sigma * stream.normal();
  return v;
}

linalg::DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, RandomStream& stream) {
  std::vector<double> data(rows * cols);
  for (auto& x : data) x = stream.normal();
  return linalg::DenseMatrix(rows, cols, std::move(data));
}

linalg::DenseMatrix random_orthonormal(std::size_t rows, std::size_t cols, RandomStream& stream) {
  if (cols == 0) return linalg::DenseMatrix(rows, 0);
  return linalg::householder_qr(gaussian_matrix(rows, cols, stream)).q;
}

linalg::Vector random_unit_vector(std::size_t m, RandomStream& stream) {
  for (;;) {
    linalg::Vector v(m);
    for (auto& x : v) x = stream.normal();
    const double nrm = linalg::norm2(v);
    if (nrm > 0.0) {
      for (auto& x : v) x /= nrm;
      return v;
    }
  }
}

}  // namespace condgrowth::sim
