#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "choreo/continuum.hpp"
#include "choreo/fourier_loop.hpp"
#include "choreo/params.hpp"

namespace choreo {

struct ActionBreakdown {
    double kinetic = 0.0;    // v²/2 ∫ ||ẏ||²
    double potential = 0.0;  // (1/2) ∬ ||y(s)-y(r)||^{-σ}
    double total = 0.0;      // kinetic + potential
    double tilde = 0.0;      // Jensen/Hölder relaxation
    double bar = 0.0;        // eigenvalue relaxation, >= 2π²v²(1+2/σ)
    double mu_xi = 0.0;      // ∫ μ ξ_y
};

struct ActionOptions {
    int grid = 512;                 // trapezoid points in s
    int t_nodes = 48;               // Jacobi nodes in the chord offset t
    int mu_xi_nodes = 64;           // nodes for ∫ μ ξ_y
    double collision_floor = 1e-9;  // chordal distance floor at quadrature nodes
    bool kinetic_only = false;      // drop the σ-potential (gradient checks)
};

// The double integral substitutes r = s+t; the inner s-integral runs on the
// uniform grid (periodic trapezoid) and the outer t-integral uses the
// singular engine with the chord's t^{-σ} weight.
ActionBreakdown action(const FourierLoop& loop, const ModelParams& params,
                       const ActionOptions& opt = {});

// ∫ μ ξ_y by singular quadrature of the closed-form ξ_y.
double mu_xi_quadrature(const FourierLoop& loop, const ModelParams& params,
                        int nodes = 64);

// Coefficient route Σ_k 2||a_k||² d_k, cross-checked internally against the
// quadrature route (ConsistencyError if they disagree beyond 1e-6 relative).
double mu_xi_inner(const FourierLoop& loop, const Spectrum& spectrum);

// ∫||ẏ||² - 4π² ∫μξ_y = Σ_k 2||a_k||² (4π²k² - 4π²d_k) >= 0, zero only for
// pure k = 1 loops.
double kinetic_gap(const FourierLoop& loop, const Spectrum& spectrum);

// Φ(ξ) = (∫ μ ξ)^beta ∫ ξ^{-beta}; for beta = σ/2 the minimum over positive ξ
// (vanishing quadratically at the endpoints) is c, attained iff ξ ∝ ξ̂.
double holder_phi(const std::function<double(double)>& xi_fn, const ModelParams& params,
                  double beta);

// g(u) = u + (2/σ) u^{-σ/2}; unique minimum at u = 1; bar = 2π²v² g(∫μξ_y).
double action_lower_bound_g(double u, double sigma);

// d(total)/d(conj a_k): component j of mode k holds ∂/∂Re + i ∂/∂Im.
// Kinetic part exact; potential part differentiates the same quadrature used
// by action(), so it matches finite differences of action() tightly.
std::vector<std::complex<double>> action_gradient(const FourierLoop& loop,
                                                  const ModelParams& params,
                                                  const ActionOptions& opt = {});

}  // namespace choreo
