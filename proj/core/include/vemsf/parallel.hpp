#pragma once

#include <cstddef>
#include <functional>

namespace vemsf {

/// Worker count: hardware concurrency, capped by VEMSF_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Bodies must
/// write only to slot i of caller-owned storage; the first exception thrown
/// (lowest index) is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace vemsf
