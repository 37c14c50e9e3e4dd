#ifndef EWB_PARALLEL_HPP
#define EWB_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ewb {

/// Worker cap: WORKBENCH_THREADS when set, hardware concurrency otherwise.
inline int worker_count() {
    if (const char* env = std::getenv("WORKBENCH_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : int(hc);
}

/// Static-chunked parallel loop over [0, count). The body must be safe to
/// run concurrently for distinct indices; results must not depend on the
/// schedule (write-by-index patterns only).
inline void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body) {
    const int workers = std::min<std::int64_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::int64_t i = w; i < count; i += workers) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace ewb

#endif
