#pragma once

namespace diskvolt {

// Whether a kernel runs its inner loop through OpenMP or as the plain
// serial loop. Both paths accumulate partial results into per-item slots
// and reduce in a fixed order, so they produce bit-identical values; the
// serial path is kept as the reference implementation for tests and the
// benchmark.
enum class Exec { Serial, Parallel };

// Effective thread budget: min(omp_get_max_threads(), $DISKVOLT_THREADS).
// Returns 1 when OpenMP is unavailable or the cap is <= 1.
int max_threads();

}  // namespace diskvolt
