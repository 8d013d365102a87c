#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace mesodefect {

// Worker count: hardware concurrency, capped by MESODEFECT_THREADS when set.
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Results are
// written by index, so output order never depends on scheduling. The first
// exception (by index) is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

} // namespace mesodefect
