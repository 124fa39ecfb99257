#pragma once

#include <vector>

#include "choreo/fourier_loop.hpp"
#include "choreo/params.hpp"

namespace choreo {

// Fourier diagonalization of the nonlocal operator Δ^μ:
//   d_k = ∫₀¹ 4 sin²(kπs) / (c (2 sin πs)^{2+σ}) ds,   λ_k = 4π²k²/d_k.
struct Spectrum {
    double sigma = 0.0;
    int K = 0;
    std::vector<double> d_k;       // index i holds d_{i+1}
    std::vector<double> lambda_k;  // index i holds λ_{i+1}

    double d(int k) const { return d_k[k - 1]; }
    double lambda(int k) const { return lambda_k[k - 1]; }
};

Spectrum compute_spectrum(const ModelParams& params, int K,
                          const QuadratureSpec& spec = {});

struct PvOptions {
    double window = 0.0;        // ε around the singularity; 0 = auto 1/(8K)
    int window_nodes = 48;      // Jacobi nodes on [0, ε]
    double speed_floor = 1e-6;  // reject ||ẏ(s)|| below this
    double chord_floor = 1e-6;  // self-intersection guard outside the window
};

// -lim_{δ→0} ∫_{s+δ}^{1+s-δ} σ (y(s)-y(r)) / ||y(s)-y(r)||^{2+σ} dr.
// The ε-window around r = s is handled by subtracting the odd local model
// σ ẏ(s) t / ||ẏ(s) t||^{2+σ} (whose principal value vanishes) and integrating
// the bounded remainder against the t^{-σ} weight.
std::vector<double> pv_force(const FourierLoop& loop, double s,
                             const ModelParams& params, const PvOptions& opt = {});

// max over a uniform grid of ||v² ẍ(s) - pv_force(x, s)|| for x = unit circle.
double circle_residual(const ModelParams& params, const PvOptions& opt = {},
                       int grid = 64);

// Δ^μ y(t) = ∫₀¹ μ(s) (2y(t) - y(t+s) - y(t-s)) ds by singular quadrature.
std::vector<double> delta_mu_pointwise(const FourierLoop& loop, double t,
                                       const ModelParams& params,
                                       const QuadratureSpec& spec = {});

// Diagonal action: each a_k scaled by d_k. Requires spectrum.K >= loop.modes().
FourierLoop delta_mu_spectral(const FourierLoop& loop, const Spectrum& spectrum);

// Euler-Lagrange residual max_grid ||v² ÿ(t) - pv_force(loop, t)||.
// grid = 0 picks max(64, 8K).
double el_residual(const FourierLoop& loop, const ModelParams& params,
                   const PvOptions& opt = {}, int grid = 0);

}  // namespace choreo
