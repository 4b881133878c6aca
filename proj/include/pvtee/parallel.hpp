#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pvtee {

/// Worker count: PVTEE_THREADS if set, else the hardware concurrency.
unsigned default_threads();

/// Calls body(begin, end) on contiguous blocks of [0, n). Blocks are fixed by
/// n and the block size alone, so results written per index do not depend on
/// the thread count. The first exception thrown by a block is rethrown.
template <class Body>
void parallel_for(std::size_t n, std::size_t block, Body&& body, unsigned threads = default_threads()) {
  if (n == 0) return;
  block = std::max<std::size_t>(block, 1);
  const std::size_t blocks = (n + block - 1) / block;
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), blocks));
  if (threads == 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b * block, std::min(n, (b + 1) * block));
    return;
  }
  std::vector<std::exception_ptr> errors(blocks);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t b = t; b < blocks; b += threads) {
        try {
          body(b * block, std::min(n, (b + 1) * block));
        } catch (...) {
          errors[b] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace pvtee
