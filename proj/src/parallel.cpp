#include "lpmkit/parallel.hpp"

#include <atomic>
#include <thread>

namespace lpmkit::parallel {

namespace {
std::atomic<int> g_threads{0};  // 0 = use hardware default
}

int hardware_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

int threads() {
  int n = g_threads.load(std::memory_order_relaxed);
  return n > 0 ? n : hardware_threads();
}

void set_threads(int n) { g_threads.store(n > 0 ? n : 0, std::memory_order_relaxed); }

}  // namespace lpmkit::parallel
