#include "choreo/fourier_loop.hpp"

#include <cmath>
#include <numbers>

#include "choreo/kernels.hpp"

namespace choreo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_loop(const FourierLoop& loop) {
    if (loop.dim < 2) throw DomainError("FourierLoop: dim must be >= 2");
    if (loop.modes() < 1 || static_cast<int>(loop.coeffs.size()) != loop.modes() * loop.dim)
        throw DomainError("FourierLoop: coefficient array must hold K x dim entries");
}
}  // namespace

double FourierLoop::mode_norm2(int k) const {
    double s = 0.0;
    for (int j = 0; j < dim; ++j) s += std::norm(a(k, j));
    return s;
}

FourierLoop make_loop(int dim, int K) {
    if (dim < 2) throw DomainError("make_loop: dim must be >= 2");
    if (K < 1) throw DomainError("make_loop: K must be >= 1");
    FourierLoop loop;
    loop.dim = dim;
    loop.coeffs.assign(static_cast<std::size_t>(K) * dim, {0.0, 0.0});
    return loop;
}

FourierLoop unit_circle(int dim, double phase) {
    FourierLoop loop = make_loop(dim, 1);
    const std::complex<double> rot = std::polar(1.0, kTwoPi * phase);
    loop.a(1, 0) = 0.5 * rot;
    loop.a(1, 1) = std::complex<double>(0.0, -0.5) * rot;
    return loop;
}

FourierLoop circle_loop(std::span<const double> e1, std::span<const double> e2) {
    if (e1.size() != e2.size() || e1.size() < 2) throw DomainError("circle_loop: bad frame");
    FourierLoop loop = make_loop(static_cast<int>(e1.size()), 1);
    for (std::size_t j = 0; j < e1.size(); ++j)
        loop.a(1, static_cast<int>(j)) = std::complex<double>(0.5 * e1[j], -0.5 * e2[j]);
    return loop;
}

void loop_position(const FourierLoop& loop, double t, std::span<double> out) {
    check_loop(loop);
    for (int j = 0; j < loop.dim; ++j) out[j] = 0.0;
    for (int k = 1; k <= loop.modes(); ++k) {
        const double ang = kTwoPi * k * t;
        const double cr = std::cos(ang), ci = std::sin(ang);
        for (int j = 0; j < loop.dim; ++j) {
            const auto& a = loop.a(k, j);
            out[j] += 2.0 * (a.real() * cr - a.imag() * ci);
        }
    }
}

void loop_velocity(const FourierLoop& loop, double t, std::span<double> out) {
    check_loop(loop);
    for (int j = 0; j < loop.dim; ++j) out[j] = 0.0;
    for (int k = 1; k <= loop.modes(); ++k) {
        const double w = kTwoPi * k;
        const double ang = w * t;
        const double cr = std::cos(ang), ci = std::sin(ang);
        for (int j = 0; j < loop.dim; ++j) {
            const auto& a = loop.a(k, j);
            out[j] -= 2.0 * w * (a.real() * ci + a.imag() * cr);
        }
    }
}

void loop_accel(const FourierLoop& loop, double t, std::span<double> out) {
    check_loop(loop);
    for (int j = 0; j < loop.dim; ++j) out[j] = 0.0;
    for (int k = 1; k <= loop.modes(); ++k) {
        const double w = kTwoPi * k;
        const double ang = w * t;
        const double cr = std::cos(ang), ci = std::sin(ang);
        for (int j = 0; j < loop.dim; ++j) {
            const auto& a = loop.a(k, j);
            out[j] -= 2.0 * w * w * (a.real() * cr - a.imag() * ci);
        }
    }
}

LoopPoint evaluate(const FourierLoop& loop, double t) {
    LoopPoint p;
    p.position.resize(loop.dim);
    p.velocity.resize(loop.dim);
    loop_position(loop, t, p.position);
    loop_velocity(loop, t, p.velocity);
    return p;
}

void loop_delta(const FourierLoop& loop, double s, double tau, std::span<double> out) {
    check_loop(loop);
    for (int j = 0; j < loop.dim; ++j) out[j] = 0.0;
    for (int k = 1; k <= loop.modes(); ++k) {
        const double ang = kTwoPi * k * s;
        const double cr = std::cos(ang), ci = std::sin(ang);
        // e^{2πik tau} - 1 = (-2 sin²(πk tau), sin(2πk tau))
        const double half = std::numbers::pi * k * tau;
        const double sh = std::sin(half);
        const double dr = -2.0 * sh * sh;
        const double di = std::sin(kTwoPi * k * tau);
        const double er = cr * dr - ci * di;
        const double ei = cr * di + ci * dr;
        for (int j = 0; j < loop.dim; ++j) {
            const auto& a = loop.a(k, j);
            out[j] += 2.0 * (a.real() * er - a.imag() * ei);
        }
    }
}

SampledLoop sample_loop(const FourierLoop& loop, int M) {
    check_loop(loop);
    if (M < 2) throw DomainError("sample_loop: M must be >= 2");
    if (M % 2 != 0) throw DomainError("sample_loop: M must be even");
    SampledLoop s;
    s.dim = loop.dim;
    s.samples.resize(static_cast<std::size_t>(M) * loop.dim);
    std::vector<std::vector<double>> planar(loop.dim, std::vector<double>(M));
    std::vector<double*> ptrs(loop.dim);
    for (int j = 0; j < loop.dim; ++j) ptrs[j] = planar[j].data();
    kernels::ops().grid_eval(loop.coeffs.data(), loop.modes(), loop.dim, M, 0.0,
                             ptrs.data(), nullptr);
    for (int m = 0; m < M; ++m)
        for (int j = 0; j < loop.dim; ++j) s.samples[static_cast<std::size_t>(m) * loop.dim + j] = planar[j][m];
    return s;
}

FourierLoop fit_fourier(const SampledLoop& samples, int K) {
    const int M = samples.size();
    const int dim = samples.dim;
    if (dim < 2) throw DomainError("fit_fourier: dim must be >= 2");
    if (M < 2) throw DomainError("fit_fourier: need at least two samples");
    if (K < 1) throw DomainError("fit_fourier: K must be >= 1");
    if (M < 2 * K + 2)
        throw DomainError("fit_fourier: need M >= 2K+2 samples for K modes");

    // project onto the zero-mean class before fitting
    std::vector<double> mean(dim, 0.0);
    for (int m = 0; m < M; ++m)
        for (int j = 0; j < dim; ++j) mean[j] += samples.samples[static_cast<std::size_t>(m) * dim + j];
    for (int j = 0; j < dim; ++j) mean[j] /= M;

    FourierLoop loop = make_loop(dim, K);
    for (int k = 1; k <= K; ++k) {
        for (int m = 0; m < M; ++m) {
            const double ang = -kTwoPi * k * m / M;
            const double cr = std::cos(ang), ci = std::sin(ang);
            for (int j = 0; j < dim; ++j) {
                const double y = samples.samples[static_cast<std::size_t>(m) * dim + j] - mean[j];
                loop.a(k, j) += std::complex<double>(y * cr / M, y * ci / M);
            }
        }
    }
    return loop;
}

double xi(const FourierLoop& loop, double t) {
    check_loop(loop);
    double s = 0.0;
    for (int k = 1; k <= loop.modes(); ++k) {
        const double sk = std::sin(std::numbers::pi * k * t);
        s += 8.0 * loop.mode_norm2(k) * sk * sk;
    }
    return s;
}

double xi_quadrature(const FourierLoop& loop, double t, int M) {
    check_loop(loop);
    if (M < 2) throw DomainError("xi_quadrature: M must be >= 2");
    std::vector<double> delta(loop.dim);
    double acc = 0.0;
    for (int m = 0; m < M; ++m) {
        loop_delta(loop, static_cast<double>(m) / M, t, delta);
        double d2 = 0.0;
        for (int j = 0; j < loop.dim; ++j) d2 += delta[j] * delta[j];
        acc += d2;
    }
    return acc / M;
}

double kinetic_norm2(const FourierLoop& loop) {
    check_loop(loop);
    double s = 0.0;
    for (int k = 1; k <= loop.modes(); ++k) {
        const double w = kTwoPi * k;
        s += 2.0 * w * w * loop.mode_norm2(k);
    }
    return s;
}

}  // namespace choreo
