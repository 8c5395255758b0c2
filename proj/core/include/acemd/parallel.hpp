#pragma once

#include <cstddef>
#include <functional>

namespace acemd {

/// 0 maps to std::thread::hardware_concurrency() (at least 1).
std::size_t resolve_threads(std::size_t requested) noexcept;

/// Calls task(i) for every i in [0, count) on up to `threads` workers.
/// Tasks must write to disjoint outputs. If any task throws, the exception
/// from the lowest failing index is rethrown after all workers finish, so
/// the observable outcome does not depend on scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task);

}  // namespace acemd
