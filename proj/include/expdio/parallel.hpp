#pragma once
// Pair-level fan-out. Both paths run the same task body; results reach the
// sink one at a time, in task order for the serial path and completion order
// for the OpenMP path.
#include <omp.h>

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

namespace expdio {

template <class Task, class Work, class Sink>
void run_serial(const std::vector<Task>& tasks, Work&& work, Sink&& sink) {
    for (const auto& t : tasks) sink(t, work(t));
}

template <class Task, class Work, class Sink>
void run_parallel(const std::vector<Task>& tasks, int threads, Work&& work, Sink&& sink) {
    if (threads <= 1 || tasks.size() <= 1) {
        run_serial(tasks, work, sink);
        return;
    }
    std::mutex sink_mu;
    std::exception_ptr failure;
    const auto n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < n; ++i) {
        try {
            auto r = work(tasks[static_cast<std::size_t>(i)]);
            std::lock_guard<std::mutex> lock(sink_mu);
            if (!failure) sink(tasks[static_cast<std::size_t>(i)], std::move(r));
        } catch (...) {
            std::lock_guard<std::mutex> lock(sink_mu);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace expdio
