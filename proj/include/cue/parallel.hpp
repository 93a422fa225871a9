#ifndef CUE_PARALLEL_HPP
#define CUE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <type_traits>
#include <vector>

namespace cue {

/// Worker cap: CUE_SFF_THREADS if set (positive integer, else ConfigError),
/// otherwise the hardware concurrency.
int worker_count();

/// out[i] = f(i) for i < count, evaluated on up to worker_count() threads.
/// Results are stored by index, so the output never depends on scheduling.
/// The exception of the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t count, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(worker_count()));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace cue

#endif  // CUE_PARALLEL_HPP
