#pragma once

#include "choreo/kernels.hpp"

namespace choreo::kernels {

// Phasors are recomputed from sin/cos every kPhasorBlock grid steps; in
// between they advance by complex multiplication. Both ISAs share the block
// size so their rounding stays aligned.
inline constexpr int kPhasorBlock = 64;

extern const Ops scalar_ops;

#ifdef CHOREO_HAVE_AVX2
extern const Ops avx2_ops;
#endif

namespace scalar {
void grid_eval(const std::complex<double>* coeffs, int K, int dim, int M,
               double t0, double* const* out, double* const* vel);
double chord_pow_sum(const double* const* a, const double* const* b, int n,
                     int dim, double sigma, double* pow_out, double* dist2_out,
                     double* min_dist2);
double pair_accel(const double* pos, const double* mass, int n, int dim,
                  double sigma, double* acc);
}  // namespace scalar

}  // namespace choreo::kernels
