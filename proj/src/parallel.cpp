#include "choreo/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace choreo {

namespace {

int default_threads() {
    if (const char* env = std::getenv("CHOREO_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

std::atomic<int> g_threads{0};
std::atomic<ReduceMode> g_reduce{ReduceMode::Pairwise};

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double kahan_sum(const double* v, std::size_t n) {
    double s = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = v[i] - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

}  // namespace

int thread_count() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n == 0) {
        n = default_threads();
        g_threads.store(n, std::memory_order_relaxed);
    }
    return n;
}

void set_thread_count(int n) { g_threads.store(n >= 1 ? n : 1, std::memory_order_relaxed); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int workers = thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = static_cast<int>(std::min<std::size_t>(workers, n)) - 1;
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

ReduceMode reduce_mode() { return g_reduce.load(std::memory_order_relaxed); }
void set_reduce_mode(ReduceMode mode) { g_reduce.store(mode, std::memory_order_relaxed); }

double reduce(std::span<const double> values) {
    switch (reduce_mode()) {
        case ReduceMode::Sequential: {
            double s = 0.0;
            for (double v : values) s += v;
            return s;
        }
        case ReduceMode::Kahan:
            return kahan_sum(values.data(), values.size());
        case ReduceMode::Pairwise:
        default:
            return pairwise_sum(values.data(), values.size());
    }
}

double weighted_reduce(std::span<const double> weights, std::span<const double> values) {
    std::vector<double> prod(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) prod[i] = weights[i] * values[i];
    return reduce(prod);
}

}  // namespace choreo
