#pragma once

#include <complex>
#include <span>
#include <vector>

#include "choreo/errors.hpp"

namespace choreo {

// Zero-mean 1-periodic loop in R^d stored as truncated Fourier coefficients:
//   y(t) = Σ_{k=1..K} a_k e^{2πikt} + conj(a_k) e^{-2πikt}.
// Zero mean is structural (there is no k = 0 term) and y(t) is real-valued by
// construction.
struct FourierLoop {
    int dim = 2;
    std::vector<std::complex<double>> coeffs;  // mode-major, K x dim

    int modes() const { return dim > 0 ? static_cast<int>(coeffs.size()) / dim : 0; }
    std::complex<double>& a(int k, int j) { return coeffs[(k - 1) * dim + j]; }
    const std::complex<double>& a(int k, int j) const { return coeffs[(k - 1) * dim + j]; }
    // ||a_k||²
    double mode_norm2(int k) const;
};

FourierLoop make_loop(int dim, int K);

// y(t) = cos(2π(t+phase)) e_1 + sin(2π(t+phase)) e_2 in the first coordinate plane.
FourierLoop unit_circle(int dim = 2, double phase = 0.0);

// y(t) = E1 cos(2πt) + E2 sin(2πt); E1, E2 arbitrary vectors of dimension dim.
FourierLoop circle_loop(std::span<const double> e1, std::span<const double> e2);

// Loop on the uniform grid t_m = m/M, m = 0..M-1, M even.
struct SampledLoop {
    int dim = 2;
    std::vector<double> samples;  // row-major, M x dim
    int size() const { return dim > 0 ? static_cast<int>(samples.size()) / dim : 0; }
};

void loop_position(const FourierLoop& loop, double t, std::span<double> out);
void loop_velocity(const FourierLoop& loop, double t, std::span<double> out);
void loop_accel(const FourierLoop& loop, double t, std::span<double> out);

struct LoopPoint {
    std::vector<double> position;
    std::vector<double> velocity;
};
LoopPoint evaluate(const FourierLoop& loop, double t);

// y(s+tau) - y(s), computed mode by mode from e^{iθ}-1 so small tau does not
// cancel catastrophically.
void loop_delta(const FourierLoop& loop, double s, double tau, std::span<double> out);

SampledLoop sample_loop(const FourierLoop& loop, int M);
FourierLoop fit_fourier(const SampledLoop& samples, int K);

// Mean squared chord profile ξ_y(t) = ∫₀¹ ||y(s+t) - y(s)||² ds.
// Closed form in coefficients: 8 Σ_k ||a_k||² sin²(πkt).
double xi(const FourierLoop& loop, double t);
// The defining integral on an M-point grid; quadrature cross-check of xi().
double xi_quadrature(const FourierLoop& loop, double t, int M);

// ∫₀¹ ||ẏ||² = 2 Σ_k (2πk)² ||a_k||²
double kinetic_norm2(const FourierLoop& loop);

}  // namespace choreo
