#pragma once

#include <cstddef>
#include <functional>

namespace gmt {

// Worker cap for internal data parallelism. 0 means "available parallelism".
void set_worker_count(std::size_t workers) noexcept;
std::size_t worker_count() noexcept;

// Calls body(begin, end) on contiguous chunks of [0, n). Chunks are disjoint, so bodies writing
// to per-index slots produce output independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace gmt
