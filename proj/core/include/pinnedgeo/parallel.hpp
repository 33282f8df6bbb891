#pragma once

#include <cstddef>
#include <functional>

namespace pinnedgeo {

int default_workers();

// Runs body(begin, end) over [0, count) in blocks of `block` items on up to
// `workers` threads (<= 0 means default_workers()). Block boundaries do not
// depend on the worker count. The first exception thrown is rethrown.
void parallel_blocks(std::size_t count, std::size_t block, int workers,
                     const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace pinnedgeo
