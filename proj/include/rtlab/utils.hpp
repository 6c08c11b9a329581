#pragma once

#include <atomic>
#include <cmath>
#include <future>
#include <string>
#include <vector>

namespace rtlab {

/// Worker cap from RT_SUPERCONV_THREADS (default: all cores, min 1).
int worker_count();

/// Sums fn(begin, end) over fixed-size blocks of [0, n). Block partials are
/// combined in block order, so the result does not depend on the worker count.
template <class Fn>
double parallel_sum(int n, Fn&& fn) {
    constexpr int block = 4096;
    const int nblocks = (n + block - 1) / block;
    const int workers = std::min(worker_count(), nblocks);
    if (workers <= 1 || nblocks <= 1) return fn(0, n);

    std::vector<double> partial(nblocks, 0.0);
    std::atomic<int> next{0};
    auto run = [&]() {
        for (int b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1))
            partial[b] = fn(b * block, std::min(n, (b + 1) * block));
    };
    std::vector<std::future<void>> pool;
    for (int w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, run));
    run();
    for (auto& f : pool) f.get();

    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

/// Least-squares slope of y vs x; NaN with fewer than two points.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

/// One-line note on stderr.
void warn(const std::string& message);

}  // namespace rtlab
