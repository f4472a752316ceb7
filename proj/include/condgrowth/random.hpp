#pragma once

#include <cstdint>
#include <random>

#include "condgrowth/linalg.hpp"

namespace condgrowth::sim {

/// SplitMix64 mix of (seed, tag, index). Used to give every experiment block
/// its own stream, so results do not depend on how blocks are scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

/// A seeded 64-bit Mersenne Twister with normal and uniform draws.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_;
};

/// m i.i.d. N(0, σ²) draws.
linalg::Vector gaussian_vector(int m, double sigma, RandomStream& stream);

/// Entries i.i.d. N(0, 1).
linalg::DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, RandomStream& stream);

/// Q factor of a Gaussian matrix (Haar distributed). cols may be 0.
linalg::DenseMatrix random_orthonormal(std::size_t rows, std::size_t cols, RandomStream& stream);

linalg::Vector random_unit_vector(std::size_t m, RandomStream& stream);

}  // namespace condgrowth::sim
