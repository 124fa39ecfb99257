#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "choreo/fourier_loop.hpp"
#include "choreo/kernels.hpp"
#include "oracles.hpp"

using namespace choreo;
namespace k = choreo::kernels;

namespace {

struct Planar {
    std::vector<std::vector<double>> comp;
    std::vector<double*> ptrs;
    Planar(int dim, int n) : comp(dim, std::vector<double>(n)), ptrs(dim) {
        for (int j = 0; j < dim; ++j) ptrs[j] = comp[j].data();
    }
    const double* const* cptrs() const {
        return const_cast<const double* const*>(ptrs.data());
    }
};

void fill_random(Planar& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& c : p.comp)
        for (auto& v : c) v = u(rng);
}

}  // namespace

TEST_CASE("grid_eval agrees with direct per-point evaluation") {
    std::mt19937_64 rng(7);
    for (const int dim : {2, 3}) {
        const FourierLoop loop = oracle::random_loop(dim, 6, rng);
        for (const int M : {16, 63, 256}) {  // including a non-multiple of 4
            Planar pos(dim, M), vel(dim, M);
            k::ops().grid_eval(loop.coeffs.data(), loop.modes(), dim, M, 0.37,
                               pos.ptrs.data(), vel.ptrs.data());
            std::vector<double> ref_p(dim), ref_v(dim);
            double worst = 0.0;
            for (int m = 0; m < M; ++m) {
                const double t = 0.37 + static_cast<double>(m) / M;
                loop_position(loop, t, ref_p);
                loop_velocity(loop, t, ref_v);
                for (int j = 0; j < dim; ++j) {
                    worst = std::max(worst, std::abs(pos.comp[j][m] - ref_p[j]));
                    worst = std::max(worst, std::abs(vel.comp[j][m] - ref_v[j]) / 50.0);
                }
            }
            CHECK(worst < 1e-11);
        }
    }
}

TEST_CASE("chord_pow_sum matches a naive reference") {
    std::mt19937_64 rng(13);
    for (const int dim : {2, 3, 4}) {
        const int n = 203;
        Planar a(dim, n), b(dim, n);
        fill_random(a, rng);
        fill_random(b, rng);
        const double sg = 0.6;
        std::vector<double> pw(n), d2(n);
        double mind2 = 0.0;
        const double sum = k::ops().chord_pow_sum(a.cptrs(), b.cptrs(), n, dim, sg,
                                                  pw.data(), d2.data(), &mind2);
        double ref = 0.0, refmin = 1e300;
        for (int m = 0; m < n; ++m) {
            double dd = 0.0;
            for (int j = 0; j < dim; ++j) {
                const double d = a.comp[j][m] - b.comp[j][m];
                dd += d * d;
            }
            CHECK(d2[m] == doctest::Approx(dd).epsilon(1e-14));
            CHECK(pw[m] == doctest::Approx(std::pow(dd, -sg / 2.0)).epsilon(1e-14));
            ref += std::pow(dd, -sg / 2.0);
            refmin = std::min(refmin, dd);
        }
        CHECK(sum == doctest::Approx(ref).epsilon(1e-12));
        CHECK(mind2 == doctest::Approx(refmin).epsilon(1e-15));
    }
}

TEST_CASE("pair_accel matches a naive reference and Newton's third law") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const int dim : {2, 3}) {
        const int n = 37;
        std::vector<double> pos(n * dim), mass(n), acc(n * dim);
        for (auto& v : pos) v = u(rng);
        for (auto& m : mass) m = 0.5 + 0.5 * std::abs(u(rng));
        const double sg = 0.5;
        const double mind2 =
            k::ops().pair_accel(pos.data(), mass.data(), n, dim, sg, acc.data());

        std::vector<double> ref(n * dim, 0.0);
        double refmin = 1e300;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (l == i) continue;
                double dd = 0.0;
                for (int j = 0; j < dim; ++j) {
                    const double d = pos[i * dim + j] - pos[l * dim + j];
                    dd += d * d;
                }
                refmin = std::min(refmin, dd);
                const double w = sg * mass[l] * std::pow(dd, -1.0 - sg / 2.0);
                for (int j = 0; j < dim; ++j)
                    ref[i * dim + j] -= w * (pos[i * dim + j] - pos[l * dim + j]);
            }
        for (int i = 0; i < n * dim; ++i)
            CHECK(acc[i] == doctest::Approx(ref[i]).epsilon(1e-11));
        CHECK(mind2 == doctest::Approx(refmin).epsilon(1e-15));

        // Σ m_i a_i = 0 to round-off
        for (int j = 0; j < dim; ++j) {
            double p = 0.0;
            for (int i = 0; i < n; ++i) p += mass[i] * acc[i * dim + j];
            CHECK(std::abs(p) < 1e-11);
        }
    }
}

TEST_CASE("scalar and AVX2 variants are equivalent") {
    if (!k::avx2_supported()) {
        MESSAGE("AVX2 not available; dispatch stays scalar");
        return;
    }
    std::mt19937_64 rng(23);

    SUBCASE("grid_eval") {
        for (const int dim : {2, 3}) {
            const FourierLoop loop = oracle::random_loop(dim, 9, rng);
            for (const int M : {64, 250, 511}) {
                Planar ps(dim, M), vs(dim, M), pa(dim, M), va(dim, M);
                k::select(k::Isa::Scalar);
                k::ops().grid_eval(loop.coeffs.data(), 9, dim, M, 0.21, ps.ptrs.data(),
                                   vs.ptrs.data());
                k::select(k::Isa::Avx2);
                k::ops().grid_eval(loop.coeffs.data(), 9, dim, M, 0.21, pa.ptrs.data(),
                                   va.ptrs.data());
                double worst = 0.0;
                for (int j = 0; j < dim; ++j)
                    for (int m = 0; m < M; ++m) {
                        worst = std::max(worst, std::abs(ps.comp[j][m] - pa.comp[j][m]));
                        worst = std::max(worst, std::abs(vs.comp[j][m] - va.comp[j][m]));
                    }
                CHECK(worst < 1e-12);
            }
        }
    }

    SUBCASE("chord_pow_sum") {
        for (const int n : {5, 64, 257}) {
            Planar a(3, n), b(3, n);
            fill_random(a, rng);
            fill_random(b, rng);
            std::vector<double> pw_s(n), pw_a(n);
            double min_s = 0.0, min_a = 0.0;
            k::select(k::Isa::Scalar);
            const double sum_s = k::ops().chord_pow_sum(a.cptrs(), b.cptrs(), n, 3, 0.5,
                                                        pw_s.data(), nullptr, &min_s);
            k::select(k::Isa::Avx2);
            const double sum_a = k::ops().chord_pow_sum(a.cptrs(), b.cptrs(), n, 3, 0.5,
                                                        pw_a.data(), nullptr, &min_a);
            CHECK(sum_a == doctest::Approx(sum_s).epsilon(1e-13));
            CHECK(min_a == min_s);
            for (int m = 0; m < n; ++m)
                CHECK(pw_a[m] == doctest::Approx(pw_s[m]).epsilon(1e-14));
        }
    }

    SUBCASE("pair_accel") {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (const int n : {9, 40, 129}) {
            for (const int dim : {2, 3}) {
                std::vector<double> pos(n * dim), mass(n), acc_s(n * dim), acc_a(n * dim);
                for (auto& v : pos) v = u(rng);
                for (auto& m : mass) m = 1.0 / n;
                k::select(k::Isa::Scalar);
                const double min_s =
                    k::ops().pair_accel(pos.data(), mass.data(), n, dim, 0.5, acc_s.data());
                k::select(k::Isa::Avx2);
                const double min_a =
                    k::ops().pair_accel(pos.data(), mass.data(), n, dim, 0.5, acc_a.data());
                CHECK(min_a == doctest::Approx(min_s).epsilon(1e-15));
                for (int i = 0; i < n * dim; ++i)
                    CHECK(acc_a[i] == doctest::Approx(acc_s[i]).epsilon(5e-13));
            }
        }
    }

    k::select_auto();
}

TEST_CASE("dispatch control") {
    k::select(k::Isa::Scalar);
    CHECK(k::active() == k::Isa::Scalar);
    if (k::avx2_supported()) {
        k::select(k::Isa::Avx2);
        CHECK(k::active() == k::Isa::Avx2);
    }
    k::select_auto();
}
