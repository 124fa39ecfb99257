#include "choreo/minimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "choreo/parallel.hpp"

namespace choreo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double grad_norm(std::span<const std::complex<double>> g) {
    double s = 0.0;
    for (const auto& z : g) s += std::norm(z);
    return std::sqrt(s);
}

double evaluate_total(const FourierLoop& loop, const ModelParams& params,
                      const ActionOptions& aopt, ActionBreakdown* out) {
    try {
        const ActionBreakdown br = action(loop, params, aopt);
        if (out) *out = br;
        return br.total;
    } catch (const CollisionError&) {
        return kInf;
    }
}

}  // namespace

FourierLoop random_loop_on_shell(const Spectrum& spectrum, int dim, int K,
                                 std::uint64_t seed) {
    if (spectrum.K < K) throw ConfigError("random_loop_on_shell: spectrum too short");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourierLoop loop = make_loop(dim, K);
    for (int k = 1; k <= K; ++k) {
        const double decay = 1.0 / (k * k);
        for (int j = 0; j < dim; ++j)
            loop.a(k, j) = std::complex<double>(u(rng) * decay, u(rng) * decay);
    }
    // scale onto the ∫ μ ξ_y = 1 shell
    double s = 0.0;
    for (int k = 1; k <= K; ++k) s += 2.0 * loop.mode_norm2(k) * spectrum.d(k);
    const double scale = 1.0 / std::sqrt(s);
    for (auto& a : loop.coeffs) a *= scale;
    return loop;
}

double circle_distance(const FourierLoop& loop) {
    const int dim = loop.dim;
    double tail2 = 0.0;
    for (int k = 2; k <= loop.modes(); ++k) tail2 += loop.mode_norm2(k);
    const double n1 = std::sqrt(loop.mode_norm2(1));
    const double tail = std::sqrt(tail2) / std::max(n1, 1e-12);

    double g11 = 0.0, g22 = 0.0, g12 = 0.0;
    for (int j = 0; j < dim; ++j) {
        const double e1 = 2.0 * loop.a(1, j).real();
        const double e2 = 2.0 * loop.a(1, j).imag();
        g11 += e1 * e1;
        g22 += e2 * e2;
        g12 += e1 * e2;
    }
    const double frame = std::sqrt((g11 - 1.0) * (g11 - 1.0) +
                                   (g22 - 1.0) * (g22 - 1.0) + 2.0 * g12 * g12);
    const double radius = std::abs(n1 * n1 - 0.5);
    return tail + radius + frame;
}

MinimizeResult minimize_action(const ModelParams& params, int dim, int K,
                               const std::optional<FourierLoop>& init,
                               const MinimizeOptions& opt) {
    ActionOptions aopt;
    aopt.grid = opt.grid;
    aopt.t_nodes = opt.t_nodes;

    Spectrum spectrum;  // built lazily, only when a random init is needed
    auto seeded_init = [&](std::uint64_t seed) {
        if (spectrum.K < K) spectrum = compute_spectrum(params, K);
        return random_loop_on_shell(spectrum, dim, K, seed);
    };

    FourierLoop loop = init ? *init : seeded_init(opt.seed);
    if (loop.dim != dim || loop.modes() > K)
        throw ConfigError("minimize_action: init loop does not match dim/K");
    if (loop.modes() < K) {
        FourierLoop padded = make_loop(dim, K);
        for (int k = 1; k <= loop.modes(); ++k)
            for (int j = 0; j < dim; ++j) padded.a(k, j) = loop.a(k, j);
        loop = padded;
    }

    // inverse kinetic diagonal; flattens the (2πk)² stiffness of high modes
    std::vector<double> precond(static_cast<std::size_t>(K), 1.0);
    if (opt.precondition) {
        for (int k = 1; k <= K; ++k) {
            const double w = 2.0 * kPi * k;
            precond[k - 1] = 1.0 / (1.0 + 2.0 * params.v2 * w * w);
        }
    }

    MinimizeResult res;
    res.converged = false;
    int restarts = 0;
    ActionBreakdown br;
    double f = evaluate_total(loop, params, aopt, &br);
    while (!std::isfinite(f) && restarts < opt.max_restarts) {
        loop = seeded_init(opt.seed ^ (0x9e3779b97f4a7c15ULL * ++restarts));
        f = evaluate_total(loop, params, aopt, &br);
    }
    if (!std::isfinite(f)) {
        res.loop = loop;
        res.value = f;
        res.gradient_norm = kInf;
        res.circle_dist = circle_distance(loop);
        return res;
    }

    double step = 1.0;
    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        const std::vector<std::complex<double>> g = action_gradient(loop, params, aopt);
        const double gnorm = grad_norm(g);
        if (opt.observer) opt.observer(loop, br, gnorm);
        if (gnorm <= opt.grad_tol) {
            res.converged = true;
            res.gradient_norm = gnorm;
            break;
        }

        // descent direction p = -P g; directional derivative g·p
        double slope = 0.0;
        for (int k = 1; k <= K; ++k)
            for (int j = 0; j < dim; ++j)
                slope -= precond[k - 1] * std::norm(g[(k - 1) * dim + j]);

        double alpha = std::min(2.0 * step, 4.0);
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            FourierLoop trial = loop;
            for (int k = 1; k <= K; ++k)
                for (int j = 0; j < dim; ++j)
                    trial.a(k, j) -= alpha * precond[k - 1] * g[(k - 1) * dim + j];
            ActionBreakdown tbr;
            const double ft = evaluate_total(trial, params, aopt, &tbr);
            if (ft <= f + opt.armijo_c1 * alpha * slope) {
                loop = std::move(trial);
                f = ft;
                br = tbr;
                step = alpha;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            if (init || restarts >= opt.max_restarts) {
                res.gradient_norm = gnorm;
                break;  // stalled; report non-convergence
            }
            loop = seeded_init(opt.seed ^ (0xbf58476d1ce4e5b9ULL * ++restarts));
            f = evaluate_total(loop, params, aopt, &br);
            step = 1.0;
            continue;
        }
    }
    if (!res.converged && res.gradient_norm == 0.0)
        res.gradient_norm = grad_norm(action_gradient(loop, params, aopt));
    res.loop = loop;
    res.value = f;
    res.iterations = iter;
    res.circle_dist = circle_distance(loop);
    return res;
}

std::vector<ScanRow> scan_sigma(std::span<const double> sigmas, int dim, int K,
                                std::span<const std::uint64_t> seeds,
                                const MinimizeOptions& opt) {
    std::vector<ScanRow> rows(sigmas.size() * seeds.size());
    parallel_for(rows.size(), [&](std::size_t idx) {
        const double sigma = sigmas[idx / seeds.size()];
        const std::uint64_t seed = seeds[idx % seeds.size()];
        ScanRow row;
        row.sigma = sigma;
        row.seed = seed;
        try {
            const ModelParams params = make_params(sigma);
            row.predicted_min = params.predicted_minimum();
            MinimizeOptions local = opt;
            local.seed = seed;
            const MinimizeResult r = minimize_action(params, dim, K, std::nullopt, local);
            row.achieved_min = r.value;
            row.gap = r.value - row.predicted_min;
            row.circle_dist = r.circle_dist;
            row.iterations = r.iterations;
            row.converged = r.converged;
        } catch (const Error&) {
            row.converged = false;
            row.achieved_min = std::numeric_limits<double>::quiet_NaN();
            row.gap = std::numeric_limits<double>::quiet_NaN();
            row.circle_dist = std::numeric_limits<double>::quiet_NaN();
        }
        rows[idx] = row;
    });
    return rows;
}

}  // namespace choreo
