#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dbdesc {

// Runs fn(0..count-1) across up to max_inflight worker threads. Callers
// write results into pre-sized slots, so merge order never depends on
// completion order. If several workers throw, the exception for the
// lowest index wins — the error surfaced is deterministic.
template <typename Fn>
void parallel_for(size_t count, size_t max_inflight, Fn&& fn) {
    if (count == 0) return;
    size_t workers = max_inflight == 0 ? 1 : std::min(max_inflight, count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::atomic<size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

} // namespace dbdesc
