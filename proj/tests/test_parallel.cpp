// Thread configuration and the index-parallel loop used by the kernels.

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "lpmkit/parallel.hpp"

using namespace lpmkit;

namespace {

// Restores the global thread count when a test section ends.
struct ThreadGuard {
  int saved = parallel::threads();
  ~ThreadGuard() { parallel::set_threads(saved); }
};

}  // namespace

TEST_CASE("thread count configuration") {
  ThreadGuard guard;

  CHECK(parallel::hardware_threads() >= 1);
  CHECK(parallel::threads() >= 1);

  parallel::set_threads(3);
  CHECK(parallel::threads() == 3);

  // Zero means "use all hardware threads".
  parallel::set_threads(0);
  CHECK(parallel::threads() == parallel::hardware_threads());

  parallel::set_threads(-5);
  CHECK(parallel::threads() == parallel::hardware_threads());

  parallel::set_threads(1);
  CHECK(parallel::threads() == 1);
}

TEST_CASE("for_index visits every index exactly once in both modes") {
  ThreadGuard guard;
  parallel::set_threads(4);

  for (const Mode mode : {Mode::serial, Mode::multi_threaded}) {
    for (const std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{7},
                                std::size_t{256}}) {
      CAPTURE(mode == Mode::serial, n);
      std::vector<std::atomic<int>> hits(n);
      for (auto& h : hits) h.store(0);
      parallel::for_index(n, mode, [&](std::size_t i) { hits[i].fetch_add(1); });
      for (std::size_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
    }
  }
}

TEST_CASE("for_index produces mode-independent results in index slots") {
  ThreadGuard guard;
  parallel::set_threads(4);

  const std::size_t n = 500;
  std::vector<long long> serial(n);
  std::vector<long long> multi(n);
  auto work = [](std::size_t i) {
    long long acc = 0;
    for (std::size_t k = 0; k <= i % 97; ++k) acc += static_cast<long long>(i * k);
    return acc;
  };
  parallel::for_index(n, Mode::serial, [&](std::size_t i) { serial[i] = work(i); });
  parallel::for_index(n, Mode::multi_threaded,
                      [&](std::size_t i) { multi[i] = work(i); });
  CHECK(serial == multi);
}

TEST_CASE("for_index propagates a worker exception in both modes") {
  ThreadGuard guard;
  parallel::set_threads(4);

  for (const Mode mode : {Mode::serial, Mode::multi_threaded}) {
    CAPTURE(mode == Mode::serial);
    try {
      parallel::for_index(64, mode, [&](std::size_t i) {
        if (i == 37) throw std::runtime_error("failed at " + std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "failed at 37");
    }
  }
}

TEST_CASE("the error collector keeps the lowest-index capture") {
  parallel::detail::FirstError first_error;
  auto capture_at = [&](std::size_t index, const std::string& message) {
    try {
      throw std::runtime_error(message);
    } catch (...) {
      first_error.capture(index);
    }
  };

  CHECK(!first_error.has_error());
  capture_at(5, "five");
  capture_at(9, "nine");  // higher index: ignored
  capture_at(2, "two");   // lower index: replaces the previous capture
  REQUIRE(first_error.has_error());
  try {
    first_error.rethrow();
    FAIL("rethrow must throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "two");
  }
}

TEST_CASE("for_index with one iteration runs inline") {
  ThreadGuard guard;
  parallel::set_threads(8);
  int value = 0;
  parallel::for_index(1, Mode::multi_threaded, [&](std::size_t) { value = 41; });
  CHECK(value == 41);
}
