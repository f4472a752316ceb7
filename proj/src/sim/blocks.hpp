#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "condgrowth/random.hpp"
#include "condgrowth/sim.hpp"

namespace condgrowth::sim::detail {

enum StreamTag : std::uint64_t {
  kNormTail = 1,
  kSweep = 2,
  kProjection = 3,
  kProjectionBasis = 4,
  kLsResidual = 5,
  kNoisyQr = 6,
};

// Runs fn(stream, first_trial, count) for every block of kBlockSize trials and
// returns the per-block results in block order. The stream of block b is
// seeded from (seed, tag, b) alone.
template <class Result, class Fn>
std::vector<Result> run_blocks(long trials, int workers, std::uint64_t seed, std::uint64_t tag, Fn fn) {
  const long blocks = (trials + kBlockSize - 1) / kBlockSize;
  std::vector<Result> results(static_cast<std::size_t>(blocks));
  auto run_one = [&](long b) {
    RandomStream stream(derive_seed(seed, tag, static_cast<std::uint64_t>(b)));
    const long first = b * kBlockSize;
    results[static_cast<std::size_t>(b)] = fn(stream, first, std::min(kBlockSize, trials - first));
  };

  const int threads = static_cast<int>(std::clamp<long>(workers, 1, std::max(1L, blocks)));
  if (threads == 1) {
    for (long b = 0; b < blocks; ++b) run_one(b);
    return results;
  }

  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (long b = next++; b < blocks; b = next++) {
        try {
          run_one(b);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace condgrowth::sim::detail
