#pragma once

#include <cstddef>
#include <functional>

namespace qcd {

/// Resolves a worker count: an explicit request wins, then the QCDSIM_THREADS
/// environment variable, then std::thread::hardware_concurrency().
unsigned resolve_threads(unsigned requested = 0);

/// Process-wide worker cap used by ensemble operations (0 = resolve).
void set_thread_count(unsigned threads);
unsigned thread_count();

/*!
 * Runs body(i) for i in [0, n) over contiguous static blocks.
 *
 * Each index must write only its own output slot; reductions happen
 * afterwards in index order, which keeps results independent of the worker
 * count. The first exception thrown by any worker is rethrown.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace qcd
