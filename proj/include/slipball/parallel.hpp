#pragma once

#include <cstddef>
#include <functional>

namespace slipball {

/// Worker count used by grid loops: the explicit cap if one is set, else
/// SLIPBALL_THREADS if set to a positive integer, else the hardware count.
std::size_t worker_count();

/// Overrides SLIPBALL_THREADS; 0 clears the override.
void set_thread_cap(std::size_t cap);

/// Runs fn(row) for every row in [0, rows). Rows are distributed across
/// worker_count() threads; callers store per-row results and reduce them in
/// row order, so results do not depend on the thread count. The first
/// exception thrown by any row is rethrown after all workers join.
void for_each_row(std::size_t rows, const std::function<void(std::size_t)>& fn);

}  // namespace slipball
