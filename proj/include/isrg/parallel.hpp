#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace isrg {

/// Number of workers used when the caller passes 0.
inline unsigned hardware_workers() noexcept {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and the worker count, so any per-index output is
/// deterministic.
template <class Fn>
void parallel_for(std::uint64_t n, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = hardware_workers();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));
  if (workers <= 1) {
    fn(std::uint64_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(n, w * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(n, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          fn(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Integer sum of fn(begin, end) over chunks of [0, n).
template <class Fn>
std::uint64_t parallel_sum(std::uint64_t n, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = hardware_workers();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));
  std::vector<std::uint64_t> partial(workers, 0);
  const std::uint64_t chunk = (n + workers - 1) / workers;
  parallel_for(workers, workers, [&](std::uint64_t wb, std::uint64_t we) {
    for (std::uint64_t w = wb; w < we; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(n, w * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(n, begin + chunk);
      partial[w] = fn(begin, end);
    }
  });
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

}  // namespace isrg
