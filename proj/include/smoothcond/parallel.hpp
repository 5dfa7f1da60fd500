#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace smoothcond {

/// Samples per block. Block b always draws from RngStream(seed, b), so
/// results do not depend on the worker count.
inline constexpr std::uint64_t kBlockSize = 1024;

inline std::uint64_t block_count(std::uint64_t samples) {
  return (samples + kBlockSize - 1) / kBlockSize;
}

/// Worker count from SMOOTHCOND_WORKERS, else the hardware concurrency.
int default_workers();

/// Runs fn(block, first_sample, count) for every block and returns the
/// per-block results in block order. Callers merge them sequentially, which
/// keeps floating-point aggregation independent of scheduling.
template <class Result, class Fn>
std::vector<Result> run_blocks(std::uint64_t samples, int workers, Fn&& fn) {
  const std::uint64_t blocks = block_count(samples);
  std::vector<Result> results(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      const std::uint64_t first = b * kBlockSize;
      const std::uint64_t count = std::min(kBlockSize, samples - first);
      try {
        results[b] = fn(b, first, count);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(blocks);
      }
    }
  };

  const int n = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::uint64_t>(blocks, 1))));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace smoothcond
