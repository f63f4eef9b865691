#pragma once

#include <cstddef>
#include <functional>

namespace gns {

/// Worker count: GNS_THREADS when set to a positive integer, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count); iterations must be independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gns
