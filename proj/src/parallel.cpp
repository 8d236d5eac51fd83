#include "bondperc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bondperc {

unsigned default_thread_count() {
  if (const char* env = std::getenv("BONDPERC_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
      // fall through to hardware concurrency
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

unsigned resolve_threads(unsigned requested) { return requested == 0 ? default_thread_count() : requested; }

void parallel_tasks(std::size_t n_tasks, unsigned threads,
                    const std::function<void(std::size_t, unsigned)>& body) {
  threads = resolve_threads(threads);
  if (threads == 1 || n_tasks <= 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) body(t, 0);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n_tasks));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = next.fetch_add(1); t < n_tasks; t = next.fetch_add(1)) {
          try {
            body(t, w);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n_tasks);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bondperc
