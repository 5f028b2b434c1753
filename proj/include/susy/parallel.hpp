#pragma once

#include <functional>

namespace susy::parallel {

/// Number of worker threads for row-parallel loops. Initialized from the
/// SUSY_PAULI_THREADS environment variable (0 or unset: hardware concurrency).
unsigned thread_count();
void set_thread_count(unsigned n);

/// Calls body(row) for every row in [0, rows). Rows are split into contiguous
/// blocks, so results are identical for any thread count as long as body only
/// writes row-local data.
void for_rows(int rows, const std::function<void(int)>& body);

}  // namespace susy::parallel
