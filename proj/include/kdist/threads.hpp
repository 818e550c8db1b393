#pragma once

namespace kdist {

/// Worker cap for the OpenMP kernels. Resolution order: explicit
/// set_thread_count, then KDIST_THREADS, then machine parallelism.
int thread_count();
void set_thread_count(int n);

}  // namespace kdist
