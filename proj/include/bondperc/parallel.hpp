#pragma once

#include <cstddef>
#include <functional>

namespace bondperc {

// Worker count from $BONDPERC_THREADS, else hardware concurrency (>= 1).
unsigned default_thread_count();

// Resolves 0 to default_thread_count().
unsigned resolve_threads(unsigned requested);

// Runs body(task, worker) for task in [0, n_tasks) on up to `threads`
// workers. Tasks are claimed dynamically; worker ids are in [0, threads).
// Results must be merged by the caller in a scheduling-independent way.
// The first exception thrown by any task is rethrown after all workers join.
void parallel_tasks(std::size_t n_tasks, unsigned threads,
                    const std::function<void(std::size_t task, unsigned worker)>& body);

}  // namespace bondperc
