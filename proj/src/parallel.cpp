#include "qcd/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qcd {

namespace {
std::atomic<unsigned> g_threads{0};
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("QCDSIM_THREADS")) {
        try {
            const int parsed = std::stoi(env);
            if (parsed > 0) {
                return static_cast<unsigned>(parsed);
            }
        } catch (const std::exception&) {
            // malformed value: fall through to hardware concurrency
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(unsigned threads) { g_threads.store(threads); }

unsigned thread_count() { return resolve_threads(g_threads.load()); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads) {
    if (n == 0) {
        return;
    }
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(n, threads > 0 ? threads : thread_count()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace qcd
