#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

namespace lpmkit::parallel {

// Execution mode for the data-parallel kernels. Every kernel that accepts a
// Mode produces identical results in both modes; `serial` is the reference
// implementation used for testing, `multi_threaded` the OpenMP one.
enum class Mode { serial, multi_threaded };

// Number of worker threads used by Mode::multi_threaded (defaults to the
// hardware concurrency; configurable via the --threads CLI flag).
int threads();
void set_threads(int n);
int hardware_threads();

namespace detail {

class FirstError {
 public:
  void capture(std::size_t index) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!error_ || index < index_) {
      error_ = std::current_exception();
      index_ = index;
    }
  }
  bool has_error() const { return error_ != nullptr; }
  [[noreturn]] void rethrow() const { std::rethrow_exception(error_); }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
  std::size_t index_ = 0;
};

}  // namespace detail

// Runs f(0) ... f(n-1). Iterations must be independent; results should be
// written to index-addressed slots so that the outcome does not depend on
// scheduling. If any iteration throws, the exception of the lowest failing
// index is rethrown after the loop.
template <class F>
void for_index(std::size_t n, Mode mode, F&& f) {
#ifdef LPMKIT_HAVE_OPENMP
  if (mode == Mode::multi_threaded && threads() > 1 && n > 1) {
    detail::FirstError first_error;
#pragma omp parallel for schedule(dynamic) num_threads(threads())
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      if (first_error.has_error()) continue;
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
        first_error.capture(static_cast<std::size_t>(i));
      }
    }
    if (first_error.has_error()) first_error.rethrow();
    return;
  }
#endif
  (void)mode;
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace lpmkit::parallel

namespace lpmkit {
using parallel::Mode;  // re-exported: the execution mode is part of most APIs
}  // namespace lpmkit
