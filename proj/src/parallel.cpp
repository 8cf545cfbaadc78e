#include "nlrad/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nlrad {

namespace {
std::atomic<unsigned> g_threads{0};

unsigned hardware_default() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs workers over precomputed ranges; serial when only one range.
template <typename MakeJob>
void run_jobs(std::size_t jobs, MakeJob&& make_job) {
  if (jobs == 1) {
    make_job(0)();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t j = 0; j < jobs; ++j) {
    pool.emplace_back([&, j] {
      try {
        make_job(j)();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}
}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
  const unsigned configured = g_threads.load();
  return configured == 0 ? hardware_default() : configured;
}

void parallel_chunks(std::size_t begin, std::size_t end,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t span = end > begin ? end - begin : 0;
  if (span == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(thread_count(), std::max<std::size_t>(span / 256, 1));
  if (workers <= 1) {
    body(begin, end);
    return;
  }
  const std::size_t chunk = (span + workers - 1) / workers;
  run_jobs(workers, [&](std::size_t j) {
    const std::size_t lo = begin + j * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    return [lo, hi, &body] {
      if (lo < hi) body(lo, hi);
    };
  });
}

void parallel_index(std::size_t count,
                    const std::function<void(std::size_t)>& body) {
  parallel_chunks(0, count, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) body(i);
  });
}

}  // namespace nlrad
