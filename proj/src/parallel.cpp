#include "tsqrt/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace tsqrt {

std::size_t worker_count() {
    static const std::size_t cached = [] {
        std::size_t count = 0;
        if (const char* env = std::getenv("TSQRT_THREADS")) {
            count = static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
        }
        if (count == 0) {
            count = std::max(1u, std::thread::hardware_concurrency());
        }
        return count;
    }();
    return cached;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(worker_count(), count);
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
    }
}

}  // namespace tsqrt
