//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_PARALLEL_H_
#define RSMILES_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rsmiles {

/// Calls fn(i) for every i in [0, n) on up to `threads` workers. Work items
/// must write only to their own slot of any shared output. If items throw,
/// the exception of the lowest failing index is rethrown after all workers
/// have stopped.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn &&fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next { 0 };
  std::mutex mu;
  std::exception_ptr error;
  std::size_t error_index = n;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back(work);
  for (std::thread &t: pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

}  // namespace rsmiles

#endif  // RSMILES_PARALLEL_H_
