#pragma once

#include <functional>

namespace hankelrec {

// Runs fn(0..n-1) on up to `threads` workers over contiguous index chunks.
// Callers write results into index-addressed slots, so the assembled output
// is bit-identical to the sequential run regardless of scheduling.
// threads <= 1 runs inline. Exceptions from workers are rethrown.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

// Default worker count: the HANKELREC_THREADS environment variable when set
// to a positive integer, otherwise 1.
int default_thread_count();

}  // namespace hankelrec
