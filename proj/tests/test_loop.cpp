#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "choreo/fourier_loop.hpp"
#include "oracles.hpp"

using namespace choreo;
using oracle::kPi;

TEST_CASE("unit circle evaluates to the expected point and velocity") {
    const FourierLoop c = unit_circle();
    const LoopPoint p = evaluate(c, 0.0);
    CHECK(p.position[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.position[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p.velocity[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p.velocity[1] == doctest::Approx(2.0 * kPi).epsilon(1e-15));
}

TEST_CASE("periodicity: t and t+1 give identical outputs") {
    std::mt19937_64 rng(11);
    const FourierLoop loop = oracle::random_loop(3, 5, rng);
    for (double t : {0.13, 0.5, 0.77}) {
        const LoopPoint a = evaluate(loop, t);
        const LoopPoint b = evaluate(loop, t + 1.0);
        for (int j = 0; j < 3; ++j) {
            CHECK(a.position[j] == doctest::Approx(b.position[j]).epsilon(1e-12));
            CHECK(a.velocity[j] == doctest::Approx(b.velocity[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("velocity matches central finite differences at O(h^2)") {
    std::mt19937_64 rng(17);
    const FourierLoop loop = oracle::random_loop(2, 6, rng);
    const double t = 0.31;
    std::vector<double> vel(2);
    loop_velocity(loop, t, vel);
    double err_h = 0.0, err_h2 = 0.0;
    for (double h : {1e-3, 5e-4}) {
        const LoopPoint a = evaluate(loop, t + h);
        const LoopPoint b = evaluate(loop, t - h);
        double err = 0.0;
        for (int j = 0; j < 2; ++j)
            err = std::max(err, std::abs((a.position[j] - b.position[j]) / (2 * h) - vel[j]));
        (h == 1e-3 ? err_h : err_h2) = err;
    }
    CHECK(err_h / err_h2 == doctest::Approx(4.0).epsilon(0.05));  // quadratic in h
}

TEST_CASE("sample/fit round trip on the unit circle") {
    const FourierLoop c = unit_circle();
    const FourierLoop back = fit_fourier(sample_loop(c, 64), 1);
    for (int j = 0; j < 2; ++j)
        CHECK(std::abs(back.a(1, j) - c.a(1, j)) < 1e-12);
}

TEST_CASE("round trip property on random loops") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = trial % 2 == 0 ? 2 : 3;
        const FourierLoop loop = oracle::random_loop(dim, 8, rng);
        const FourierLoop back = fit_fourier(sample_loop(loop, 64), 8);
        double err = 0.0;
        for (int k = 1; k <= 8; ++k)
            for (int j = 0; j < dim; ++j) err = std::max(err, std::abs(back.a(k, j) - loop.a(k, j)));
        CHECK(err < 1e-10);
    }
}

TEST_CASE("fit_fourier subtracts the sample mean") {
    const FourierLoop c = unit_circle();
    SampledLoop s = sample_loop(c, 32);
    for (int m = 0; m < s.size(); ++m) s.samples[2 * m] += 3.7;  // constant offset
    const FourierLoop back = fit_fourier(s, 1);
    // fitted loop reproduces the circle exactly: the offset lands in the
    // discarded mean
    CHECK(std::abs(back.a(1, 0) - c.a(1, 0)) < 1e-12);
    CHECK(std::abs(back.a(1, 1) - c.a(1, 1)) < 1e-12);
    // and evaluating recovers zero mean over the grid
    const SampledLoop resampled = sample_loop(back, 32);
    double mean = 0.0;
    for (int m = 0; m < 32; ++m) mean += resampled.samples[2 * m];
    CHECK(std::abs(mean / 32.0) < 1e-13);
}

TEST_CASE("sampling validation") {
    const FourierLoop c = unit_circle();
    CHECK_THROWS_AS(sample_loop(c, 1), DomainError);
    CHECK_THROWS_AS(sample_loop(c, 7), DomainError);
    CHECK_THROWS_AS(fit_fourier(sample_loop(c, 8), 4), DomainError);  // M < 2K+2
}

TEST_CASE("kinetic coefficient identity vs grid quadrature") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = trial % 2 == 0 ? 2 : 3;
        const int K = 1 + static_cast<int>(rng() % 8);
        const FourierLoop loop = oracle::random_loop(dim, K, rng);
        const int M = std::max(64, 4 * K);
        double grid = 0.0;
        std::vector<double> vel(dim);
        for (int m = 0; m < M; ++m) {
            loop_velocity(loop, static_cast<double>(m) / M, vel);
            for (int j = 0; j < dim; ++j) grid += vel[j] * vel[j];
        }
        grid /= M;
        CHECK(kinetic_norm2(loop) == doctest::Approx(grid).epsilon(1e-8));
    }
}

TEST_CASE("xi: circle antipodal value, zero offset, quadrature agreement") {
    const FourierLoop c = unit_circle();
    CHECK(xi(c, 0.5) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(xi(c, 0.0) == doctest::Approx(0.0).epsilon(1e-14));

    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = trial % 2 == 0 ? 2 : 3;
        const int K = 1 + static_cast<int>(rng() % 8);
        const FourierLoop loop = oracle::random_loop(dim, K, rng);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double t = u(rng);
        const double closed = xi(loop, t);
        const double quad = xi_quadrature(loop, t, 256);
        CHECK(closed == doctest::Approx(quad).epsilon(1e-8));
        CHECK(closed == doctest::Approx(xi(loop, 1.0 - t)).epsilon(1e-12));
        CHECK(closed >= 0.0);
    }
}
