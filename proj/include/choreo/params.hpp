#pragma once

#include "choreo/quadrature.hpp"

namespace choreo {

// Interaction exponent sigma together with the two derived constants that
// calibrate the travelling-wave system:
//   c  = ∫₀¹ (2 sin πt)^{-sigma} dt
//   v2 = sigma * c / (8π²)   (squared wave speed making the unit circle a solution)
struct ModelParams {
    double sigma = 0.0;
    double c = 0.0;
    double v2 = 0.0;

    // 2π²v²(1 + 2/σ), the absolute minimum of the action over zero-mean loops.
    double predicted_minimum() const;
};

// ∫₀¹ (2 sin πt)^{-sigma} dt, sigma in (0,1). Result is >= 1.
double compute_c(double sigma, const QuadratureSpec& spec = {});

ModelParams make_params(double sigma, const QuadratureSpec& spec = {});

// mu(s) = (2 sin πs)^{-(2+sigma)} / c, the kernel weight of the nonlocal
// operator. Non-integrable on its own at s = 0, 1; those points are rejected.
double mu_weight(double s, const ModelParams& params);

}  // namespace choreo
