#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "kernels_impl.hpp"

namespace choreo::kernels::scalar {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void grid_eval(const std::complex<double>* coeffs, int K, int dim, int M,
               double t0, double* const* out, double* const* vel) {
    for (int j = 0; j < dim; ++j) {
        std::fill(out[j], out[j] + M, 0.0);
        if (vel) std::fill(vel[j], vel[j] + M, 0.0);
    }
    for (int k = 1; k <= K; ++k) {
        const double omega = kTwoPi * k;
        // phasor p_m = e^{iω(t0 + m/M)}, advanced by ζ = e^{iω/M} and refreshed
        // from sin/cos at block boundaries to stop rounding drift
        const double cr = std::cos(omega / M), ci = std::sin(omega / M);
        double pr = 1.0, pi = 0.0;
        for (int m = 0; m < M; ++m) {
            if (m % kPhasorBlock == 0) {
                const double ang = omega * (t0 + static_cast<double>(m) / M);
                pr = std::cos(ang);
                pi = std::sin(ang);
            }
            for (int j = 0; j < dim; ++j) {
                const std::complex<double> a = coeffs[(k - 1) * dim + j];
                out[j][m] += 2.0 * (a.real() * pr - a.imag() * pi);
                if (vel) vel[j][m] -= 2.0 * omega * (a.real() * pi + a.imag() * pr);
            }
            const double nr = pr * cr - pi * ci;
            const double ni = pr * ci + pi * cr;
            pr = nr;
            pi = ni;
        }
    }
}

double chord_pow_sum(const double* const* a, const double* const* b, int n,
                     int dim, double sigma, double* pow_out, double* dist2_out,
                     double* min_dist2) {
    const double expo = -0.5 * sigma;
    double sum = 0.0;
    double mind2 = std::numeric_limits<double>::infinity();
    for (int m = 0; m < n; ++m) {
        double d2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            const double d = a[j][m] - b[j][m];
            d2 += d * d;
        }
        const double p = std::pow(d2, expo);
        sum += p;
        if (d2 < mind2) mind2 = d2;
        if (pow_out) pow_out[m] = p;
        if (dist2_out) dist2_out[m] = d2;
    }
    if (min_dist2) *min_dist2 = mind2;
    return sum;
}

double pair_accel(const double* pos, const double* mass, int n, int dim,
                  double sigma, double* acc) {
    const double expo = -1.0 - 0.5 * sigma;
    double mind2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < dim; ++j) acc[i * dim + j] = 0.0;
        for (int l = 0; l < n; ++l) {
            if (l == i) continue;
            double d2 = 0.0;
            for (int j = 0; j < dim; ++j) {
                const double d = pos[i * dim + j] - pos[l * dim + j];
                d2 += d * d;
            }
            const double w = sigma * mass[l] * std::pow(d2, expo);
            for (int j = 0; j < dim; ++j)
                acc[i * dim + j] -= w * (pos[i * dim + j] - pos[l * dim + j]);
            if (d2 < mind2) mind2 = d2;
        }
    }
    return mind2;
}

}  // namespace choreo::kernels::scalar

namespace choreo::kernels {

const Ops scalar_ops{"scalar", scalar::grid_eval, scalar::chord_pow_sum,
                     scalar::pair_accel};

}  // namespace choreo::kernels
