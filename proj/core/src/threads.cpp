#include "harmonic_groups/threads.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace hg {

namespace {
std::atomic<unsigned> requested{0};
}

void set_worker_threads(unsigned n) { requested.store(n); }

unsigned worker_threads() {
  const unsigned n = requested.load();
  if (n > 0) return n;
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace hg
