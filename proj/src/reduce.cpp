#include "tlap/reduce.hpp"

#include <algorithm>
#include <thread>

namespace tlap {

namespace {

double sum_range(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return sum_range(v, lo, mid) + sum_range(v, mid, hi);
}

double max_range(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double m = v[lo];
        for (std::size_t i = lo + 1; i < hi; ++i) m = std::max(m, v[i]);
        return m;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return std::max(max_range(v, lo, mid), max_range(v, mid, hi));
}

}  // namespace

double pairwise_sum(const std::vector<double>& v) {
    return v.empty() ? 0.0 : sum_range(v, 0, v.size());
}

double pairwise_max(const std::vector<double>& v) {
    return v.empty() ? 0.0 : max_range(v, 0, v.size());
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int t = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(t);
    const std::size_t chunk = (count + t - 1) / t;
    for (int k = 0; k < t; ++k) {
        const std::size_t lo = k * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace tlap
