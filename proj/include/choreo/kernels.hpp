#pragma once

#include <complex>

namespace choreo::kernels {

enum class Isa { Scalar, Avx2 };

// Hot inner loops, dispatched at runtime. All variants are equivalence-tested
// against the scalar reference; only reduction order may differ between ISAs.
struct Ops {
    const char* name;

    // out[j][m] = y_j(t0 + m/M) for the loop y(t) = Σ_k a_k e^{2πikt} + conj;
    // coeffs is mode-major (K x dim). vel (optional, may be null) receives the
    // term-by-term derivative. Buffers are overwritten.
    void (*grid_eval)(const std::complex<double>* coeffs, int K, int dim, int M,
                      double t0, double* const* out, double* const* vel);

    // Returns Σ_m (||A_m - B_m||²)^{-sigma/2} for planar point arrays A, B.
    // pow_out (optional): the per-row summands. dist2_out (optional): per-row
    // squared distances. *min_dist2 (optional): smallest squared distance.
    double (*chord_pow_sum)(const double* const* a, const double* const* b,
                            int n, int dim, double sigma, double* pow_out,
                            double* dist2_out, double* min_dist2);

    // acc[i*dim+j] = -sigma Σ_{l≠i} m_l (q_i - q_l)_j / ||q_i - q_l||^{2+sigma}.
    // pos/acc row-major n x dim; acc is overwritten. Returns the minimum
    // squared pair distance (over distinct pairs).
    double (*pair_accel)(const double* pos, const double* mass, int n, int dim,
                         double sigma, double* acc);
};

// True when both the binary and the CPU support the AVX2 path.
bool avx2_supported();

void select(Isa isa);
// AVX2 when available, else scalar; honors CHOREO_KERNELS=scalar|avx2.
void select_auto();
Isa active();

const Ops& ops();

}  // namespace choreo::kernels
