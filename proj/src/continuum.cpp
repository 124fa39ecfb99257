#include "choreo/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "choreo/parallel.hpp"

namespace choreo {

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace

Spectrum compute_spectrum(const ModelParams& params, int K, const QuadratureSpec& spec) {
    if (K < 1) throw DomainError("compute_spectrum: K must be >= 1");
    Spectrum sp;
    sp.sigma = params.sigma;
    sp.K = K;
    sp.d_k.resize(K);
    sp.lambda_k.resize(K);
    const double sg = params.sigma;
    parallel_for(static_cast<std::size_t>(K), [&](std::size_t idx) {
        const int k = static_cast<int>(idx) + 1;
        QuadratureSpec local = spec;
        // the integrand oscillates at frequency k; scale the rule with it
        local.nodes = std::max(spec.nodes, 6 * k);
        const SingularRule rule = singular_rule(sg, sg, local);
        std::vector<double> vals(rule.x.size());
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double s = rule.x[i];
            const double num = 2.0 * std::sin(k * kPi * s);
            vals[i] = num * num * std::pow(2.0 * std::sin(kPi * s), -(2.0 + sg)) / params.c;
        }
        sp.d_k[idx] = weighted_reduce(rule.w, vals);
        sp.lambda_k[idx] = 4.0 * kPi * kPi * k * k / sp.d_k[idx];
    });
    if (std::abs(sp.d_k[0] - 1.0) > 1e-8)
        throw QuadratureError("compute_spectrum: d_1 deviates from its analytic value 1");
    for (int k = 2; k <= K; ++k)
        if (!(sp.d_k[k - 1] < static_cast<double>(k) * k * sp.d_k[0]))
            throw QuadratureError("compute_spectrum: d_k < k^2 d_1 violated numerically");
    return sp;
}

std::vector<double> pv_force(const FourierLoop& loop, double s,
                             const ModelParams& params, const PvOptions& opt) {
    const int dim = loop.dim;
    const int K = loop.modes();
    const double sg = params.sigma;
    double eps = opt.window > 0.0 ? opt.window : 1.0 / (8.0 * K);
    eps = std::min(eps, 0.25);

    std::vector<double> ydot(dim);
    loop_velocity(loop, s, ydot);
    const double speed2 = norm2(ydot);
    if (std::sqrt(speed2) < opt.speed_floor)
        throw DegenerateCurveError("pv_force: ||ydot|| below the regularity floor");

    // F(τ) = u/||u||^{2+σ} with u = (y(s+τ)-y(s))/τ; smooth through τ = 0
    std::vector<double> delta(dim), u(dim);
    auto eval_F = [&](double tau, std::vector<double>& out) {
        loop_delta(loop, s, tau, delta);
        for (int j = 0; j < dim; ++j) u[j] = delta[j] / tau;
        const double w = std::pow(norm2(u), -(2.0 + sg) / 2.0);
        for (int j = 0; j < dim; ++j) out[j] = u[j] * w;
    };
    std::vector<double> F0(dim);
    {
        const double w = std::pow(speed2, -(2.0 + sg) / 2.0);
        for (int j = 0; j < dim; ++j) F0[j] = ydot[j] * w;
    }

    std::vector<double> force(dim, 0.0);

    // window: ∫₀^ε (G(t) + G(-t)) t^{-σ} dt, G(τ) = (F(τ) - F(0))/τ
    const SingularRule wrule = jacobi_left_rule(eps, sg, opt.window_nodes);
    std::vector<double> Fp(dim), Fm(dim);
    for (std::size_t i = 0; i < wrule.x.size(); ++i) {
        const double t = wrule.x[i];
        eval_F(t, Fp);
        eval_F(-t, Fm);
        const double weight = wrule.w[i] * std::pow(t, -sg);  // raw integrand ~ t^{-σ}
        for (int j = 0; j < dim; ++j) {
            const double g = (Fp[j] - F0[j]) / t + (Fm[j] - F0[j]) / (-t);
            force[j] += weight * g;
        }
    }

    // outside: ∫_ε^{1/2} (D(t) + D(-t)) dt with D = Δ/||Δ||^{2+σ}. Adaptive
    // nested Gauss: near-cusps and almost-touching chords show up as spikes
    // that a fixed panel layout cannot resolve.
    const double guard_offset = 1.0 / (4.0 * K);
    auto eval_outside = [&](double t, std::vector<double>& out) {
        for (int j = 0; j < dim; ++j) out[j] = 0.0;
        for (const double tau : {t, -t}) {
            loop_delta(loop, s, tau, delta);
            const double chord2 = norm2(delta);
            if (std::abs(tau) > guard_offset && chord2 < opt.chord_floor * opt.chord_floor)
                throw DegenerateCurveError(
                    "pv_force: loop nearly self-intersects inside the quadrature window");
            const double w = std::pow(chord2, -(2.0 + sg) / 2.0);
            for (int j = 0; j < dim; ++j) out[j] += delta[j] * w;
        }
    };
    const QuadRule& coarse = gauss_legendre(7);
    const QuadRule& fine = gauss_legendre(15);
    std::vector<double> tmp(dim), i_fine(dim), i_coarse(dim);
    auto panel_pair = [&](double lo, double hi, std::vector<double>& out_fine,
                          std::vector<double>& out_coarse) {
        const double h = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
        std::fill(out_fine.begin(), out_fine.end(), 0.0);
        std::fill(out_coarse.begin(), out_coarse.end(), 0.0);
        for (int i = 0; i < 15; ++i) {
            eval_outside(c + h * fine.x[i], tmp);
            for (int j = 0; j < dim; ++j) out_fine[j] += h * fine.w[i] * tmp[j];
        }
        for (int i = 0; i < 7; ++i) {
            eval_outside(c + h * coarse.x[i], tmp);
            for (int j = 0; j < dim; ++j) out_coarse[j] += h * coarse.w[i] * tmp[j];
        }
    };
    struct Seg {
        double lo, hi;
        int depth;
    };
    std::vector<Seg> stack;
    // start from dyadic panels graded toward the window edge
    {
        double hi = 0.5;
        while (hi > 2.0 * eps) {
            const double lo = std::max(eps, hi * 0.5);
            stack.push_back({lo, hi, 0});
            hi = lo;
        }
        if (hi > eps) stack.push_back({eps, hi, 0});
    }
    while (!stack.empty()) {
        const Seg seg = stack.back();
        stack.pop_back();
        panel_pair(seg.lo, seg.hi, i_fine, i_coarse);
        double err = 0.0;
        for (int j = 0; j < dim; ++j) err = std::max(err, std::abs(i_fine[j] - i_coarse[j]));
        if (err < std::max(1e-13, 2e-11 * (seg.hi - seg.lo)) || seg.depth >= 24) {
            for (int j = 0; j < dim; ++j) force[j] += i_fine[j];
        } else {
            const double mid = 0.5 * (seg.lo + seg.hi);
            stack.push_back({seg.lo, mid, seg.depth + 1});
            stack.push_back({mid, seg.hi, seg.depth + 1});
        }
    }

    for (int j = 0; j < dim; ++j) force[j] *= sg;
    return force;
}

double circle_residual(const ModelParams& params, const PvOptions& opt, int grid) {
    return el_residual(unit_circle(), params, opt, grid);
}

std::vector<double> delta_mu_pointwise(const FourierLoop& loop, double t,
                                       const ModelParams& params,
                                       const QuadratureSpec& spec) {
    const int dim = loop.dim;
    const double sg = params.sigma;
    const SingularRule rule = singular_rule(sg, sg, spec);
    std::vector<double> dplus(dim), dminus(dim), out(dim, 0.0);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double s = rule.x[i];
        // 2y(t) - y(t+s) - y(t-s) = -(Δ₊ + Δ₋); O(s²) at both endpoints
        loop_delta(loop, t, s, dplus);
        loop_delta(loop, t, -s, dminus);
        const double mu = std::pow(2.0 * std::sin(kPi * s), -(2.0 + sg)) / params.c;
        for (int j = 0; j < dim; ++j) out[j] -= rule.w[i] * mu * (dplus[j] + dminus[j]);
    }
    return out;
}

FourierLoop delta_mu_spectral(const FourierLoop& loop, const Spectrum& spectrum) {
    if (spectrum.K < loop.modes())
        throw ConfigError("delta_mu_spectral: spectrum does not cover the loop modes");
    FourierLoop out = loop;
    for (int k = 1; k <= loop.modes(); ++k)
        for (int j = 0; j < loop.dim; ++j) out.a(k, j) = loop.a(k, j) * spectrum.d(k);
    return out;
}

double el_residual(const FourierLoop& loop, const ModelParams& params,
                   const PvOptions& opt, int grid) {
    const int K = loop.modes();
    const int M = grid > 0 ? grid : std::max(64, 8 * K);
    std::vector<double> norms(M);
    parallel_for(static_cast<std::size_t>(M), [&](std::size_t m) {
        const double t = static_cast<double>(m) / M;
        std::vector<double> acc(loop.dim);
        loop_accel(loop, t, acc);
        const std::vector<double> f = pv_force(loop, t, params, opt);
        double r2 = 0.0;
        for (int j = 0; j < loop.dim; ++j) {
            const double r = params.v2 * acc[j] - f[j];
            r2 += r * r;
        }
        norms[m] = std::sqrt(r2);
    });
    return *std::max_element(norms.begin(), norms.end());
}

}  // namespace choreo
