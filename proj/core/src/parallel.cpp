#include "champ/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace champ {

int thread_count() {
    if (const char* env = std::getenv("CHAMP_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) {
                return n;
            }
        } catch (...) {
        }
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        const std::size_t chunk = 16;
        while (true) {
            std::size_t begin = next.fetch_add(chunk);
            if (begin >= n) {
                break;
            }
            std::size_t end = std::min(n, begin + chunk);
            for (std::size_t i = begin; i < end; ++i) {
                fn(i);
            }
        }
    };
    std::vector<std::thread> threads;
    for (int t = 1; t < workers; ++t) {
        threads.emplace_back(worker);
    }
    worker();
    for (std::thread& t : threads) {
        t.join();
    }
}

}  // namespace champ
