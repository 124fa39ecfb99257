#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "choreo/action.hpp"
#include "choreo/continuum.hpp"
#include "oracles.hpp"

using namespace choreo;
using oracle::kPi;

namespace {

// smallest chord between samples separated by more than M/32 grid steps
double min_windowed_chord(const FourierLoop& loop, int M = 128) {
    const SampledLoop s = sample_loop(loop, M);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < M; ++i)
        for (int j = i + M / 32; j < M && j - i <= M - M / 32; ++j) {
            double d2 = 0.0;
            for (int q = 0; q < loop.dim; ++q) {
                const double d = s.samples[i * loop.dim + q] - s.samples[j * loop.dim + q];
                d2 += d * d;
            }
            best = std::min(best, d2);
        }
    return std::sqrt(best);
}

// collision-free random loop: resample until action() accepts it and, when a
// margin is requested, the loop stays well clear of self-intersection
FourierLoop safe_random_loop(int dim, int K, std::mt19937_64& rng, const ModelParams& p,
                             double scale = 0.5, double margin = 0.0) {
    for (;;) {
        FourierLoop loop = oracle::random_loop(dim, K, rng, scale);
        try {
            ActionOptions quick;
            quick.grid = 128;
            quick.t_nodes = 16;
            action(loop, p, quick);
            if (margin > 0.0 && min_windowed_chord(loop) < margin) continue;
            return loop;
        } catch (const CollisionError&) {
        }
    }
}

}  // namespace

TEST_CASE("circle breakdown matches the Gamma oracle") {
    const ModelParams p = make_params(0.5);
    const ActionBreakdown br = action(unit_circle(), p);
    CHECK(br.kinetic == doctest::Approx(2.0 * kPi * kPi * oracle::kV2_05).epsilon(1e-10));
    CHECK(br.potential == doctest::Approx(oracle::kC_05 / 2.0).epsilon(1e-10));
    CHECK(br.total == doctest::Approx(oracle::kPredMin_05).epsilon(1e-10));
    CHECK(br.mu_xi == doctest::Approx(1.0).epsilon(1e-10));
    // all three functionals coincide at the circle
    CHECK(br.tilde == doctest::Approx(br.total).epsilon(1e-10));
    CHECK(br.bar == doctest::Approx(br.total).epsilon(1e-10));
}

TEST_CASE("homogeneity under radius scaling") {
    const ModelParams p = make_params(0.5);
    FourierLoop big = unit_circle();
    for (auto& a : big.coeffs) a *= 2.0;
    const ActionBreakdown one = action(unit_circle(), p);
    const ActionBreakdown two = action(big, p);
    CHECK(two.kinetic == doctest::Approx(4.0 * one.kinetic).epsilon(1e-12));
    CHECK(two.potential ==
          doctest::Approx(std::pow(2.0, -0.5) * one.potential).epsilon(1e-10));
}

TEST_CASE("potential cross-check against the naive off-diagonal double sum") {
    const ModelParams p = make_params(0.5);
    std::mt19937_64 rng(61);
    const FourierLoop loop = safe_random_loop(2, 4, rng, p);
    const ActionBreakdown br = action(loop, p);

    const int M = 512;
    const SampledLoop s = sample_loop(loop, M);
    double naive = 0.0;
    for (int m = 0; m < M; ++m)
        for (int r = 0; r < M; ++r) {
            if (r == m) continue;
            double d2 = 0.0;
            for (int j = 0; j < 2; ++j) {
                const double d = s.samples[2 * m + j] - s.samples[2 * r + j];
                d2 += d * d;
            }
            naive += std::pow(d2, -0.25);
        }
    naive /= 2.0 * M * M;
    CHECK(br.potential == doctest::Approx(naive).epsilon(1e-4));
}

TEST_CASE("collision floor raises an infinite-action error naming the chord") {
    const ModelParams p = make_params(0.5);
    // doubly traversed circle: y(s + 1/2) = y(s)
    FourierLoop doubled = make_loop(2, 2);
    doubled.a(2, 0) = {0.5, 0.0};
    doubled.a(2, 1) = {0.0, -0.5};
    CHECK_THROWS_AS(action(doubled, p), CollisionError);
}

TEST_CASE("mu_xi_inner: circle, zero loop, quadratic scaling, validation") {
    const ModelParams p = make_params(0.5);
    const Spectrum sp = compute_spectrum(p, 8);
    CHECK(mu_xi_inner(unit_circle(), sp) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mu_xi_inner(make_loop(2, 2), sp) == doctest::Approx(0.0).epsilon(1e-14));

    std::mt19937_64 rng(67);
    const FourierLoop loop = oracle::random_loop(2, 6, rng);
    const double base = mu_xi_inner(loop, sp);
    FourierLoop scaled = loop;
    for (auto& a : scaled.coeffs) a *= 1.7;
    CHECK(mu_xi_inner(scaled, sp) == doctest::Approx(1.7 * 1.7 * base).epsilon(1e-12));

    CHECK_THROWS_AS(mu_xi_inner(oracle::random_loop(2, 10, rng), sp), ConfigError);

    Spectrum bogus = sp;
    bogus.d_k[2] *= 1.5;  // inconsistent with the quadrature route
    CHECK_THROWS_AS(mu_xi_inner(loop, bogus), ConsistencyError);
}

TEST_CASE("kinetic gap: equality case, pure modes, positivity") {
    const ModelParams p = make_params(0.5);
    const Spectrum sp = compute_spectrum(p, 8);
    CHECK(std::abs(kinetic_gap(unit_circle(), sp)) < 1e-8);

    // pure k=2 mode with unit coefficient norm
    FourierLoop mode2 = make_loop(2, 2);
    mode2.a(2, 0) = {std::sqrt(0.5), 0.0};
    mode2.a(2, 1) = {0.0, std::sqrt(0.5)};
    const double expected = 2.0 * (16.0 * kPi * kPi - 4.0 * kPi * kPi * (8.0 / 3.0));
    CHECK(kinetic_gap(mode2, sp) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(expected == doctest::Approx(105.27578027828649).epsilon(1e-12));

    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const int K = 1 + static_cast<int>(rng() % 8);
        const FourierLoop loop = oracle::random_loop(trial % 2 ? 3 : 2, K, rng);
        CHECK(kinetic_gap(loop, sp) >= -1e-9);
    }
}

TEST_CASE("holder_phi: equality at xi_hat, scale invariance, strictness") {
    const ModelParams p = make_params(0.5);
    auto xi_hat = [](double s) {
        const double q = 2.0 * std::sin(kPi * s);
        return q * q;
    };
    const double phi0 = holder_phi(xi_hat, p, 0.25);
    CHECK(phi0 == doctest::Approx(oracle::kC_05).epsilon(1e-8));

    auto xi_scaled = [&](double s) { return 2.0 * xi_hat(s); };
    CHECK(holder_phi(xi_scaled, p, 0.25) == doctest::Approx(phi0).epsilon(1e-13));

    auto xi_pert = [&](double s) {
        const double w = std::sin(2.0 * kPi * s);
        return xi_hat(s) * (1.0 + 0.3 * w * w);
    };
    CHECK(holder_phi(xi_pert, p, 0.25) > phi0 + 1e-4);

    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (int trial = 0; trial < 20; ++trial) {
        const double c1 = u(rng), c2 = u(rng), c3 = u(rng);
        auto xi_rand = [&](double s) {
            return xi_hat(s) * (1.0 + c1 * std::cos(2.0 * kPi * s) +
                                c2 * std::sin(4.0 * kPi * s) +
                                c3 * std::cos(6.0 * kPi * s));
        };
        CHECK(holder_phi(xi_rand, p, 0.25) >= phi0 - 1e-10);
    }

    CHECK_THROWS_AS(holder_phi(xi_hat, p, 0.6), DomainError);
    CHECK_THROWS_AS(holder_phi([](double) { return -1.0; }, p, 0.25), DomainError);
}

TEST_CASE("inequality chain on random collision-free loops") {
    const ModelParams p = make_params(0.5);
    const double bound = p.predicted_minimum();
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 100; ++trial) {
        const int K = 1 + static_cast<int>(rng() % 6);
        const FourierLoop loop = safe_random_loop(trial % 2 ? 3 : 2, K, rng, p);
        const ActionBreakdown br = action(loop, p);
        CHECK(br.total >= br.tilde - 1e-8);
        CHECK(br.tilde >= br.bar - 1e-8);
        CHECK(br.bar >= bound - 1e-6);
        CHECK(br.total == doctest::Approx(br.kinetic + br.potential).epsilon(1e-15));
    }
}

TEST_CASE("Jensen equality on the circle: inner integral equals xi^{-sigma/2}") {
    const ModelParams p = make_params(0.5);
    const FourierLoop circle = unit_circle();
    const int M = 128;
    std::vector<double> delta(2);
    for (double t : {0.07, 0.21, 0.5, 0.83}) {
        double inner = 0.0;
        for (int m = 0; m < M; ++m) {
            loop_delta(circle, static_cast<double>(m) / M, t, delta);
            inner += std::pow(delta[0] * delta[0] + delta[1] * delta[1], -0.25);
        }
        inner /= M;
        CHECK(inner == doctest::Approx(std::pow(xi(circle, t), -0.25)).epsilon(1e-8));
    }
}

TEST_CASE("scalar bound helper g has its minimum at u = 1") {
    for (double sg : {0.25, 0.5, 0.75}) {
        const double g1 = action_lower_bound_g(1.0, sg);
        for (double h : {0.5, 0.1, 0.01}) {
            CHECK(action_lower_bound_g(1.0 + h, sg) > g1);
            CHECK(action_lower_bound_g(1.0 - h, sg) > g1);
        }
    }
    CHECK_THROWS_AS(action_lower_bound_g(0.0, 0.5), DomainError);
}

TEST_CASE("bar is exactly 2 pi^2 v^2 g(mu_xi)") {
    const ModelParams p = make_params(0.5);
    std::mt19937_64 rng(83);
    const FourierLoop loop = safe_random_loop(2, 5, rng, p);
    const ActionBreakdown br = action(loop, p);
    CHECK(br.bar == doctest::Approx(2.0 * kPi * kPi * p.v2 *
                                    action_lower_bound_g(br.mu_xi, 0.5))
                        .epsilon(1e-15));
}

TEST_CASE("gradient: critical at the circle, exact kinetic part") {
    const ModelParams p = make_params(0.5);
    const auto g = action_gradient(unit_circle(), p);
    double norm = 0.0;
    for (const auto& z : g) norm += std::norm(z);
    CHECK(std::sqrt(norm) < 1e-5);

    std::mt19937_64 rng(89);
    const FourierLoop loop = oracle::random_loop(2, 4, rng);
    ActionOptions kin_only;
    kin_only.kinetic_only = true;
    const auto gk = action_gradient(loop, p, kin_only);
    for (int k = 1; k <= 4; ++k) {
        const double w = 2.0 * kPi * k;
        for (int j = 0; j < 2; ++j) {
            const std::complex<double> expect = 2.0 * p.v2 * w * w * loop.a(k, j);
            CHECK(std::abs(gk[(k - 1) * 2 + j] - expect) < 1e-15);
        }
    }
}

TEST_CASE("gradient matches central finite differences") {
    const ModelParams p = make_params(0.5);
    ActionOptions opt;
    opt.grid = 256;
    opt.t_nodes = 40;
    std::mt19937_64 rng(97);
    const double h = 1e-5;
    for (int trial = 0; trial < 10; ++trial) {
        const FourierLoop loop = safe_random_loop(2, 4, rng, p, 0.5, 0.08);
        const auto g = action_gradient(loop, p, opt);
        double gscale = 0.0;
        for (const auto& z : g) gscale = std::max(gscale, std::abs(z));
        double worst = 0.0;
        for (int k = 1; k <= 4; ++k)
            for (int j = 0; j < 2; ++j)
                for (int part = 0; part < 2; ++part) {
                    FourierLoop lp = loop, lm = loop;
                    const std::complex<double> dz =
                        part == 0 ? std::complex<double>(h, 0.0)
                                  : std::complex<double>(0.0, h);
                    lp.a(k, j) += dz;
                    lm.a(k, j) -= dz;
                    const double fd =
                        (action(lp, p, opt).total - action(lm, p, opt).total) / (2.0 * h);
                    const double an = part == 0 ? g[(k - 1) * 2 + j].real()
                                                : g[(k - 1) * 2 + j].imag();
                    worst = std::max(worst, std::abs(fd - an));
                }
        CHECK(worst / gscale < 1e-5);
    }
}

TEST_CASE("coefficient gradient aligns with the projected EL residual") {
    const ModelParams p = make_params(0.5);
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 3; ++trial) {
        const FourierLoop loop = safe_random_loop(2, 3, rng, p, 0.45, 0.1);
        const auto g = action_gradient(loop, p);
        const int K = loop.modes();

        // L2 gradient is pv_force - v² ÿ; its Fourier projection doubled
        const int M = 64;
        std::vector<std::vector<double>> R(2, std::vector<double>(M));
        std::vector<double> acc(2);
        for (int m = 0; m < M; ++m) {
            const double t = static_cast<double>(m) / M;
            const std::vector<double> f = pv_force(loop, t, p);
            loop_accel(loop, t, acc);
            for (int j = 0; j < 2; ++j) R[j][m] = f[j] - p.v2 * acc[j];
        }
        std::vector<std::complex<double>> proj(static_cast<std::size_t>(K) * 2);
        for (int k = 1; k <= K; ++k)
            for (int j = 0; j < 2; ++j) {
                std::complex<double> z{0.0, 0.0};
                for (int m = 0; m < M; ++m) {
                    const double ang = -2.0 * kPi * k * m / M;
                    z += R[j][m] * std::complex<double>(std::cos(ang), std::sin(ang));
                }
                // R is the L2 gradient; the coefficient gradient doubles it
                proj[(k - 1) * 2 + j] = 2.0 * z / static_cast<double>(M);
            }

        double dot = 0.0, n1 = 0.0, n2 = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            dot += g[i].real() * proj[i].real() + g[i].imag() * proj[i].imag();
            n1 += std::norm(g[i]);
            n2 += std::norm(proj[i]);
        }
        CHECK(dot / std::sqrt(n1 * n2) > 0.999);
    }
}
