#include "choreo/action.hpp"

#include <cmath>
#include <numbers>

#include "choreo/kernels.hpp"

namespace choreo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// planar dim x M scratch for the grid kernels
struct PlanarGrid {
    std::vector<std::vector<double>> comp;
    std::vector<double*> ptrs;
    void reset(int dim, int M) {
        comp.assign(dim, std::vector<double>(M));
        ptrs.resize(dim);
        for (int j = 0; j < dim; ++j) ptrs[j] = comp[j].data();
    }
};

[[noreturn]] void throw_chord_collision(const double* const* a, const double* const* b,
                                        int M, int dim, double t) {
    int worst = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int m = 0; m < M; ++m) {
        double d2 = 0.0;
        for (int j = 0; j < dim; ++j) {
            const double d = a[j][m] - b[j][m];
            d2 += d * d;
        }
        if (d2 < best) {
            best = d2;
            worst = m;
        }
    }
    const double s = static_cast<double>(worst) / M;
    throw CollisionError("action: chord below the collision floor at (s, r) = (" +
                             std::to_string(s) + ", " + std::to_string(s + t) + ")",
                         static_cast<std::size_t>(worst), static_cast<std::size_t>(worst),
                         std::sqrt(best));
}

}  // namespace

double mu_xi_quadrature(const FourierLoop& loop, const ModelParams& params, int nodes) {
    QuadratureSpec spec;
    spec.nodes = std::max(nodes, 6 * loop.modes());
    const double sg = params.sigma;
    const SingularRule rule = singular_rule(sg, sg, spec);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double s = rule.x[i];
        const double mu = std::pow(2.0 * std::sin(kPi * s), -(2.0 + sg)) / params.c;
        acc += rule.w[i] * mu * xi(loop, s);
    }
    return acc;
}

double mu_xi_inner(const FourierLoop& loop, const Spectrum& spectrum) {
    if (spectrum.K < loop.modes())
        throw ConfigError("mu_xi_inner: spectrum does not cover the loop modes");
    double coeff = 0.0;
    for (int k = 1; k <= loop.modes(); ++k)
        coeff += 2.0 * loop.mode_norm2(k) * spectrum.d(k);

    ModelParams params;
    params.sigma = spectrum.sigma;
    params.c = compute_c(spectrum.sigma);
    params.v2 = spectrum.sigma * params.c / (8.0 * kPi * kPi);
    const double grid = mu_xi_quadrature(loop, params);
    if (std::abs(coeff - grid) > 1e-6 * std::max(1.0, std::abs(coeff)))
        throw ConsistencyError("mu_xi_inner: coefficient and quadrature routes disagree");
    return coeff;
}

double kinetic_gap(const FourierLoop& loop, const Spectrum& spectrum) {
    if (spectrum.K < loop.modes())
        throw ConfigError("kinetic_gap: spectrum does not cover the loop modes");
    double gap = 0.0;
    for (int k = 1; k <= loop.modes(); ++k) {
        const double kk = static_cast<double>(k) * k;
        gap += 2.0 * loop.mode_norm2(k) * 4.0 * kPi * kPi * (kk - spectrum.d(k));
    }
    return gap;
}

double action_lower_bound_g(double u, double sigma) {
    if (!(u > 0.0)) throw DomainError("action_lower_bound_g: u must be positive");
    return u + 2.0 / sigma * std::pow(u, -sigma / 2.0);
}

ActionBreakdown action(const FourierLoop& loop, const ModelParams& params,
                       const ActionOptions& opt) {
    const int dim = loop.dim;
    const int K = loop.modes();
    const int M = std::max(opt.grid, 4 * K);
    const double sg = params.sigma;

    ActionBreakdown br;
    br.kinetic = 0.5 * params.v2 * kinetic_norm2(loop);

    if (!opt.kinetic_only) {
        PlanarGrid base, shifted;
        base.reset(dim, M);
        shifted.reset(dim, M);
        const auto& kops = kernels::ops();
        kops.grid_eval(loop.coeffs.data(), K, dim, M, 0.0, base.ptrs.data(), nullptr);

        // potential = ∫₀^{1/2} P(t) dt, P(t) = ∫₀¹ ||y(s+t)-y(s)||^{-σ} ds;
        // P is symmetric about t = 1/2 so one weighted half suffices
        const SingularRule rule = jacobi_left_rule(0.5, sg, opt.t_nodes);
        const double floor2 = opt.collision_floor * opt.collision_floor;
        double pot = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double t = rule.x[i];
            kops.grid_eval(loop.coeffs.data(), K, dim, M, t, shifted.ptrs.data(), nullptr);
            double min_d2 = 0.0;
            const double sum = kops.chord_pow_sum(shifted.ptrs.data(), base.ptrs.data(),
                                                  M, dim, sg, nullptr, nullptr, &min_d2);
            if (min_d2 < floor2)
                throw_chord_collision(shifted.ptrs.data(), base.ptrs.data(), M, dim, t);
            pot += rule.w[i] * (sum / M);
        }
        br.potential = pot;
    }

    br.total = br.kinetic + br.potential;
    br.mu_xi = mu_xi_quadrature(loop, params, opt.mu_xi_nodes);
    br.tilde = br.kinetic +
               4.0 * kPi * kPi * params.v2 / sg * std::pow(br.mu_xi, -sg / 2.0);
    br.bar = 2.0 * kPi * kPi * params.v2 * action_lower_bound_g(br.mu_xi, sg);
    return br;
}

double holder_phi(const std::function<double(double)>& xi_fn, const ModelParams& params,
                  double beta) {
    if (!(beta > 0.0))
        throw DomainError("holder_phi: beta must be positive");
    if (beta >= 0.5)
        throw DomainError(
            "holder_phi: beta must be < 1/2 for xi^{-beta} to stay integrable on "
            "loop-type xi (quadratic endpoint vanishing)");
    const double sg = params.sigma;
    QuadratureSpec spec;
    spec.nodes = 96;

    const SingularRule rule_a = singular_rule(sg, sg, spec);
    double a = 0.0;
    for (std::size_t i = 0; i < rule_a.x.size(); ++i) {
        const double s = rule_a.x[i];
        const double v = xi_fn(s);
        if (!(v > 0.0)) throw DomainError("holder_phi: xi must be strictly positive");
        const double mu = std::pow(2.0 * std::sin(kPi * s), -(2.0 + sg)) / params.c;
        a += rule_a.w[i] * mu * v;
    }

    const SingularRule rule_b = singular_rule(2.0 * beta, 2.0 * beta, spec);
    double b = 0.0;
    for (std::size_t i = 0; i < rule_b.x.size(); ++i) {
        const double v = xi_fn(rule_b.x[i]);
        if (!(v > 0.0)) throw DomainError("holder_phi: xi must be strictly positive");
        b += rule_b.w[i] * std::pow(v, -beta);
    }
    return std::pow(a, beta) * b;
}

std::vector<std::complex<double>> action_gradient(const FourierLoop& loop,
                                                  const ModelParams& params,
                                                  const ActionOptions& opt) {
    const int dim = loop.dim;
    const int K = loop.modes();
    const int M = std::max(opt.grid, 4 * K);
    const double sg = params.sigma;

    std::vector<std::complex<double>> grad(static_cast<std::size_t>(K) * dim);
    for (int k = 1; k <= K; ++k) {
        const double w = kTwoPi * k;
        for (int j = 0; j < dim; ++j)
            grad[(k - 1) * dim + j] = 2.0 * params.v2 * w * w * loop.a(k, j);
    }
    if (opt.kinetic_only) return grad;

    PlanarGrid base, shifted;
    base.reset(dim, M);
    shifted.reset(dim, M);
    const auto& kops = kernels::ops();
    kops.grid_eval(loop.coeffs.data(), K, dim, M, 0.0, base.ptrs.data(), nullptr);

    // base-grid conjugate phasors e^{-2πi m/M}
    std::vector<double> cb(M), sb(M);
    for (int m = 0; m < M; ++m) {
        cb[m] = std::cos(kTwoPi * m / M);
        sb[m] = -std::sin(kTwoPi * m / M);
    }

    const SingularRule rule = jacobi_left_rule(0.5, sg, opt.t_nodes);
    const double floor2 = opt.collision_floor * opt.collision_floor;
    std::vector<double> pw(M), d2(M);
    std::vector<std::complex<double>> T(static_cast<std::size_t>(K) * dim);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double t = rule.x[i];
        kops.grid_eval(loop.coeffs.data(), K, dim, M, t, shifted.ptrs.data(), nullptr);
        double min_d2 = 0.0;
        kops.chord_pow_sum(shifted.ptrs.data(), base.ptrs.data(), M, dim, sg, pw.data(),
                           d2.data(), &min_d2);
        if (min_d2 < floor2)
            throw_chord_collision(shifted.ptrs.data(), base.ptrs.data(), M, dim, t);

        std::fill(T.begin(), T.end(), std::complex<double>(0.0, 0.0));
        for (int m = 0; m < M; ++m) {
            const double wm = pw[m] / d2[m];  // ||Δ||^{-σ-2}
            double pr = 1.0, pi = 0.0;        // phasor e^{-2πikm/M} built over k
            for (int k = 1; k <= K; ++k) {
                const double nr = pr * cb[m] - pi * sb[m];
                const double ni = pr * sb[m] + pi * cb[m];
                pr = nr;
                pi = ni;
                for (int j = 0; j < dim; ++j) {
                    const double wd = wm * (shifted.comp[j][m] - base.comp[j][m]);
                    T[(k - 1) * dim + j] += std::complex<double>(wd * pr, wd * pi);
                }
            }
        }
        for (int k = 1; k <= K; ++k) {
            // e^{-2πikt} - 1 without cancellation
            const double half = kPi * k * t;
            const double sh = std::sin(half);
            const std::complex<double> factor(-2.0 * sh * sh, -std::sin(kTwoPi * k * t));
            const std::complex<double> scale =
                -2.0 * sg * rule.w[i] / static_cast<double>(M) * factor;
            for (int j = 0; j < dim; ++j)
                grad[(k - 1) * dim + j] += scale * T[(k - 1) * dim + j];
        }
    }
    return grad;
}

}  // namespace choreo
