#pragma once

// Chunked parallel map with results returned in chunk order, so any
// reduction over them is independent of scheduling.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "harmonic_groups/threads.hpp"

namespace hg::detail {

inline constexpr std::size_t kChunkSize = 4096;

template <class Result, class Fn>
std::vector<Result> map_chunks(std::size_t n, Fn fn, std::size_t chunk = kChunkSize) {
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<Result> results(chunks);
  const std::size_t workers =
      std::min<std::size_t>(chunks, worker_threads());
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) results[c] = fn(c * chunk, std::min(n, (c + 1) * chunk));
    return results;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers) {
        try {
          results[c] = fn(c * chunk, std::min(n, (c + 1) * chunk));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace hg::detail
