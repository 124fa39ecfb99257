#ifdef CHOREO_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "kernels_impl.hpp"

namespace choreo::kernels::avx2 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ((s0+s2) + (s1+s3)); fixed order keeps results reproducible run to run
inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

// x^e per lane; libm pow on each element so scalar and AVX2 paths agree
// elementwise (the distance arithmetic avoids fused ops for the same reason)
inline __m256d pow_lanes(__m256d x, double e) {
    alignas(32) double t[4];
    _mm256_store_pd(t, x);
    t[0] = std::pow(t[0], e);
    t[1] = std::pow(t[1], e);
    t[2] = std::pow(t[2], e);
    t[3] = std::pow(t[3], e);
    return _mm256_load_pd(t);
}

}  // namespace

void grid_eval(const std::complex<double>* coeffs, int K, int dim, int M,
               double t0, double* const* out, double* const* vel) {
    if (M < 8) {
        scalar::grid_eval(coeffs, K, dim, M, t0, out, vel);
        return;
    }
    for (int j = 0; j < dim; ++j) {
        std::fill(out[j], out[j] + M, 0.0);
        if (vel) std::fill(vel[j], vel[j] + M, 0.0);
    }
    for (int k = 1; k <= K; ++k) {
        const double omega = kTwoPi * k;
        const double cr = std::cos(omega / M), ci = std::sin(omega / M);
        // ζ⁴ for the stride-4 advance
        const double c2r = cr * cr - ci * ci, c2i = 2.0 * cr * ci;
        const double c4r = c2r * c2r - c2i * c2i, c4i = 2.0 * c2r * c2i;
        const __m256d step_r = _mm256_set1_pd(c4r);
        const __m256d step_i = _mm256_set1_pd(c4i);

        int m = 0;
        double cur_r = 1.0, cur_i = 0.0;  // phasor carried between blocks
        while (m + 4 <= M) {
            const bool refresh = (m % kPhasorBlock) == 0;
            alignas(32) double prs[4], pis[4];
            if (refresh) {
                const double ang = omega * (t0 + static_cast<double>(m) / M);
                cur_r = std::cos(ang);
                cur_i = std::sin(ang);
            }
            double pr = cur_r, pi = cur_i;
            prs[0] = pr;
            pis[0] = pi;
            for (int r = 1; r < 4; ++r) {
                const double nr = pr * cr - pi * ci;
                const double ni = pr * ci + pi * cr;
                pr = nr;
                pi = ni;
                prs[r] = pr;
                pis[r] = pi;
            }
            __m256d Pr = _mm256_load_pd(prs);
            __m256d Pi = _mm256_load_pd(pis);

            const int block_end = std::min(M - (M % 4), m + kPhasorBlock);
            for (; m + 4 <= block_end; m += 4) {
                for (int j = 0; j < dim; ++j) {
                    const std::complex<double> a = coeffs[(k - 1) * dim + j];
                    const __m256d ar = _mm256_set1_pd(2.0 * a.real());
                    const __m256d ai = _mm256_set1_pd(2.0 * a.imag());
                    __m256d o = _mm256_loadu_pd(out[j] + m);
                    o = _mm256_add_pd(o, _mm256_sub_pd(_mm256_mul_pd(ar, Pr),
                                                       _mm256_mul_pd(ai, Pi)));
                    _mm256_storeu_pd(out[j] + m, o);
                    if (vel) {
                        const __m256d w = _mm256_set1_pd(omega);
                        __m256d v = _mm256_loadu_pd(vel[j] + m);
                        v = _mm256_sub_pd(
                            v, _mm256_mul_pd(w, _mm256_add_pd(_mm256_mul_pd(ar, Pi),
                                                              _mm256_mul_pd(ai, Pr))));
                        _mm256_storeu_pd(vel[j] + m, v);
                    }
                }
                const __m256d nr = _mm256_sub_pd(_mm256_mul_pd(Pr, step_r),
                                                 _mm256_mul_pd(Pi, step_i));
                const __m256d ni = _mm256_add_pd(_mm256_mul_pd(Pr, step_i),
                                                 _mm256_mul_pd(Pi, step_r));
                Pr = nr;
                Pi = ni;
            }
            alignas(32) double tr[4], ti[4];
            _mm256_store_pd(tr, Pr);
            _mm256_store_pd(ti, Pi);
            cur_r = tr[0];
            cur_i = ti[0];
        }
        // scalar tail
        for (; m < M; ++m) {
            const double ang = omega * (t0 + static_cast<double>(m) / M);
            const double pr = std::cos(ang), pi = std::sin(ang);
            for (int j = 0; j < dim; ++j) {
                const std::complex<double> a = coeffs[(k - 1) * dim + j];
                out[j][m] += 2.0 * (a.real() * pr - a.imag() * pi);
                if (vel) vel[j][m] -= 2.0 * omega * (a.real() * pi + a.imag() * pr);
            }
        }
    }
}

double chord_pow_sum(const double* const* a, const double* const* b, int n,
                     int dim, double sigma, double* pow_out, double* dist2_out,
                     double* min_dist2) {
    if (dim != 2 && dim != 3)
        return scalar::chord_pow_sum(a, b, n, dim, sigma, pow_out, dist2_out, min_dist2);
    const double expo = -0.5 * sigma;
    __m256d acc = _mm256_setzero_pd();
    __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    int m = 0;
    for (; m + 4 <= n; m += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(a[0] + m), _mm256_loadu_pd(b[0] + m));
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(a[1] + m), _mm256_loadu_pd(b[1] + m));
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        if (dim == 3) {
            const __m256d dz =
                _mm256_sub_pd(_mm256_loadu_pd(a[2] + m), _mm256_loadu_pd(b[2] + m));
            d2 = _mm256_add_pd(d2, _mm256_mul_pd(dz, dz));
        }
        const __m256d p = pow_lanes(d2, expo);
        acc = _mm256_add_pd(acc, p);
        vmin = _mm256_min_pd(vmin, d2);
        if (pow_out) _mm256_storeu_pd(pow_out + m, p);
        if (dist2_out) _mm256_storeu_pd(dist2_out + m, d2);
    }
    double sum = hsum(acc);
    alignas(32) double mins[4];
    _mm256_store_pd(mins, vmin);
    double mind2 = std::min(std::min(mins[0], mins[1]), std::min(mins[2], mins[3]));
    for (; m < n; ++m) {
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
    if ((dim != 2 && dim != 3) || n < 8)
        return scalar::pair_accel(pos, mass, n, dim, sigma, acc);
    const double expo = -1.0 - 0.5 * sigma;

    thread_local std::vector<double> planar;
    planar.resize(static_cast<std::size_t>(dim) * n);
    for (int j = 0; j < dim; ++j)
        for (int l = 0; l < n; ++l) planar[static_cast<std::size_t>(j) * n + l] = pos[l * dim + j];
    const double* px = planar.data();
    const double* py = planar.data() + n;
    const double* pz = dim == 3 ? planar.data() + 2 * n : nullptr;

    double mind2 = std::numeric_limits<double>::infinity();
    const __m256d vsig = _mm256_set1_pd(sigma);
    for (int i = 0; i < n; ++i) {
        const __m256d xi = _mm256_set1_pd(px[i]);
        const __m256d yi = _mm256_set1_pd(py[i]);
        const __m256d zi = dim == 3 ? _mm256_set1_pd(pz[i]) : _mm256_setzero_pd();
        __m256d sx = _mm256_setzero_pd(), sy = _mm256_setzero_pd(), sz = _mm256_setzero_pd();
        __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
        double tx = 0.0, ty = 0.0, tz = 0.0;  // scalar spill for blocks containing i
        int l = 0;
        for (; l + 4 <= n; l += 4) {
            if (i >= l && i < l + 4) {
                for (int q = l; q < l + 4; ++q) {
                    if (q == i) continue;
                    const double dx = px[i] - px[q];
                    const double dy = py[i] - py[q];
                    double d2 = dx * dx + dy * dy;
                    double dz = 0.0;
                    if (dim == 3) {
                        dz = pz[i] - pz[q];
                        d2 += dz * dz;
                    }
                    const double w = sigma * mass[q] * std::pow(d2, expo);
                    tx += w * dx;
                    ty += w * dy;
                    if (dim == 3) tz += w * dz;
                    if (d2 < mind2) mind2 = d2;
                }
                continue;
            }
            const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(px + l));
            const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(py + l));
            __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
            __m256d dz = _mm256_setzero_pd();
            if (dim == 3) {
                dz = _mm256_sub_pd(zi, _mm256_loadu_pd(pz + l));
                d2 = _mm256_add_pd(d2, _mm256_mul_pd(dz, dz));
            }
            vmin = _mm256_min_pd(vmin, d2);
            const __m256d w = _mm256_mul_pd(
                vsig, _mm256_mul_pd(_mm256_loadu_pd(mass + l), pow_lanes(d2, expo)));
            sx = _mm256_add_pd(sx, _mm256_mul_pd(w, dx));
            sy = _mm256_add_pd(sy, _mm256_mul_pd(w, dy));
            if (dim == 3) sz = _mm256_add_pd(sz, _mm256_mul_pd(w, dz));
        }
        double ax = hsum(sx) + tx;
        double ay = hsum(sy) + ty;
        double az = dim == 3 ? hsum(sz) + tz : 0.0;
        alignas(32) double mins[4];
        _mm256_store_pd(mins, vmin);
        const double vm = std::min(std::min(mins[0], mins[1]), std::min(mins[2], mins[3]));
        if (vm < mind2) mind2 = vm;
        for (; l < n; ++l) {
            if (l == i) continue;
            const double dx = px[i] - px[l];
            const double dy = py[i] - py[l];
            double d2 = dx * dx + dy * dy;
            double dz = 0.0;
            if (dim == 3) {
                dz = pz[i] - pz[l];
                d2 += dz * dz;
            }
            const double w = sigma * mass[l] * std::pow(d2, expo);
            ax += w * dx;
            ay += w * dy;
            if (dim == 3) az += w * dz;
            if (d2 < mind2) mind2 = d2;
        }
        acc[i * dim + 0] = -ax;
        acc[i * dim + 1] = -ay;
        if (dim == 3) acc[i * dim + 2] = -az;
    }
    return mind2;
}

}  // namespace choreo::kernels::avx2

namespace choreo::kernels {

const Ops avx2_ops{"avx2", avx2::grid_eval, avx2::chord_pow_sum, avx2::pair_accel};

}  // namespace choreo::kernels

#endif  // CHOREO_HAVE_AVX2
