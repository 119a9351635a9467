#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tau3corr {

/// Worker count used by the data-parallel kernels. Values never depend on it:
/// every kernel writes per-index results and reduces them afterwards in index
/// order.
struct ExecPolicy {
  unsigned threads = 1;
};

/// Runs body(i) for i in [begin, end) on policy.threads workers, worker w
/// taking indices w, w + workers, ... The first exception thrown by a worker is rethrown.
template <class Body>
void parallel_for(std::size_t begin, std::size_t end, ExecPolicy policy, Body&& body) {
  if (end <= begin) return;
  const std::size_t n = end - begin;
  const std::size_t workers = std::min<std::size_t>(std::max(1u, policy.threads), n);
  if (workers == 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  // Interleaved assignment balances kernels whose cost grows with the index.
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = begin + w; i < end; i += workers) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace tau3corr
