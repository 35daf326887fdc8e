#pragma once

#include <cstddef>
#include <functional>

namespace clcst {

/// Worker count used by the slice loops; defaults to the hardware concurrency.
int worker_count();
void set_worker_count(int workers);

/// Calls fn(i) for i in [0, count) on the worker pool. fn must only write to
/// disjoint locations; the first exception thrown is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace clcst
