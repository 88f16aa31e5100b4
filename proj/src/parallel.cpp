#include "ifacediv/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ifacediv {

std::size_t worker_count() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) {
        n = 1;
    }
    if (const char* env = std::getenv("IFACEDIV_THREADS")) {
        char* end = nullptr;
        long requested = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && requested >= 1) {
            n = static_cast<std::size_t>(requested);
        }
    }
    return n;
}

void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& fn) {
    std::size_t workers = std::min(worker_count(), n_tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace ifacediv
