#include "kdist/threads.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>

namespace kdist {

namespace {
std::atomic<int> g_threads{0};
}

int thread_count() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n > 0) return n;
    if (const char* env = std::getenv("KDIST_THREADS")) {
        int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    return omp_get_max_threads();
}

void set_thread_count(int n) { g_threads.store(n, std::memory_order_relaxed); }

}  // namespace kdist
