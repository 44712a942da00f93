#ifndef PARETOGOF_SRC_PARALLEL_HPP
#define PARETOGOF_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pgof::detail {

/// Splits [0, count) into contiguous chunks, one per worker. `body(begin, end)`
/// must only write to slots it owns; the first exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, std::size_t jobs, Body&& body) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t chunk = (count + jobs - 1) / jobs;
  for (std::size_t w = 0; w < jobs; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace pgof::detail

#endif  // PARETOGOF_SRC_PARALLEL_HPP
