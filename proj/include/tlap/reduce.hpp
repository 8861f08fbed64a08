#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tlap {

/// Fixed-shape pairwise tree reductions: the result depends only on the
/// array contents, never on how many threads produced them, so reports
/// stay byte-identical under any degree of parallelism.
double pairwise_sum(const std::vector<double>& v);
double pairwise_max(const std::vector<double>& v);

/// Run fn(i) for i in [0, count) on `threads` threads in fixed chunks.
/// Each index writes only its own slot, so the schedule cannot change any
/// result.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace tlap
