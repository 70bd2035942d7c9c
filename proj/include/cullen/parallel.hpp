#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cullen {

inline unsigned default_jobs()
{
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on up to `jobs` threads, handing out
/// indices in order. The first exception thrown by any body is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body)
{
    jobs = std::max(1U, jobs);
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::mutex mutex;
    std::size_t next = 0;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            std::size_t index;
            {
                std::lock_guard lock(mutex);
                if (next >= count || failure)
                    return;
                index = next++;
            }
            try {
                body(index);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };

    std::vector<std::thread> threads;
    const auto thread_count = std::min<std::size_t>(jobs, count);
    threads.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t)
        threads.emplace_back(worker);
    for (auto& thread : threads)
        thread.join();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace cullen
