#pragma once

namespace memctrl::runtime {

/// Applies the MEMCTRL_THREADS cap to the OpenMP pool (no-op when unset,
/// malformed, or when OpenMP is unavailable).  Returns the thread count in
/// effect afterwards.
int apply_thread_cap();

/// Threads the parallel regions will use right now.
int active_threads();

}  // namespace memctrl::runtime
