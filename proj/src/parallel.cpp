#include "geokit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace geokit {

unsigned worker_count()
{
  if (const char * env = std::getenv("GEOKIT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) { return static_cast<unsigned>(v); }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> & body)
{
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) { body(i); }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) { first_error = std::current_exception(); }
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) { pool.emplace_back(worker); }
  pool.clear();

  if (first_error) { std::rethrow_exception(first_error); }
}

}  // namespace geokit
