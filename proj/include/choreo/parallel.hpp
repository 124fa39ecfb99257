#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace choreo {

// Worker count for grid-style loops. Defaults to CHOREO_THREADS when set,
// otherwise 1. Results never depend on the count: parallel_for writes into
// caller-owned per-index slots only.
int thread_count();
void set_thread_count(int n);

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Reduction policy for quadrature and trajectory sums. All modes are
// deterministic; Pairwise/Kahan are the reproducible-flag modes.
enum class ReduceMode { Sequential, Pairwise, Kahan };
ReduceMode reduce_mode();
void set_reduce_mode(ReduceMode mode);

double reduce(std::span<const double> values);
// Σ w_i v_i under the active mode.
double weighted_reduce(std::span<const double> weights, std::span<const double> values);

}  // namespace choreo
