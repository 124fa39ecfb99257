#include "choreo/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>

namespace choreo {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal matrix
// built from the three-term recurrence of the orthogonal polynomials; weights
// come from the first components of the eigenvectors.
QuadRule golub_welsch_jacobi(int n, double a, double b) {
    if (n < 1) throw DomainError("quadrature rule needs at least one node");
    if (a <= -1.0 || b <= -1.0) throw DomainError("Jacobi exponents must exceed -1");

    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));

    const double ab = a + b;
    diag[0] = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        diag[k] = (b * b - a * a) / (t * (t + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        double bk;
        if (k == 1) {
            // the (k+a+b) factor cancels against the denominator at k = 1
            bk = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            const double t = 2.0 * k + ab;
            bk = 4.0 * k * (k + a) * (k + b) * (k + ab) /
                 (t * t * (t + 1.0) * (t - 1.0));
        }
        sub[k - 1] = std::sqrt(bk);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw QuadratureError("tridiagonal eigensolve failed");

    // total mass mu0 = ∫ (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
    const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                           std::lgamma(b + 1.0) - std::lgamma(ab + 2.0);
    const double mu0 = std::exp(log_mu0);

    QuadRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.x[i] = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        rule.w[i] = mu0 * v0 * v0;
    }
    return rule;
}

struct RuleKey {
    int n;
    std::int64_t a;
    std::int64_t b;
    bool operator<(const RuleKey& o) const {
        return std::tie(n, a, b) < std::tie(o.n, o.a, o.b);
    }
};

std::int64_t quantize(double v) { return static_cast<std::int64_t>(std::llround(v * 1e12)); }

const QuadRule& cached_jacobi(int n, double a, double b) {
    static std::map<RuleKey, QuadRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    const RuleKey key{n, quantize(a), quantize(b)};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, golub_welsch_jacobi(n, a, b)).first;
    return it->second;
}

void append_graded_side(std::vector<double>& x, std::vector<double>& w,
                        double alpha, int n, double grading, bool mirror) {
    // graded mesh on [0, 1/2] clustering toward the singular endpoint
    double q = grading;
    if (q <= 0.0) q = alpha > 0.0 ? 2.0 / (1.0 - alpha) : 1.0;
    double prev = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double edge = 0.5 * std::pow(static_cast<double>(j) / n, q);
        const double mid = 0.5 * (prev + edge);
        x.push_back(mirror ? 1.0 - mid : mid);
        w.push_back(edge - prev);
        prev = edge;
    }
}

void append_jacobi_side(std::vector<double>& x, std::vector<double>& w,
                        double alpha, int n, bool mirror) {
    const SingularRule side = jacobi_left_rule(0.5, alpha, n);
    for (std::size_t i = 0; i < side.x.size(); ++i) {
        x.push_back(mirror ? 1.0 - side.x[i] : side.x[i]);
        w.push_back(side.w[i]);
    }
}

}  // namespace

const QuadRule& gauss_legendre(int n) { return cached_jacobi(n, 0.0, 0.0); }

const QuadRule& gauss_jacobi(int n, double alpha, double beta) {
    return cached_jacobi(n, alpha, beta);
}

SingularRule jacobi_left_rule(double length, double alpha, int nodes) {
    if (nodes < 1) throw DomainError("jacobi_left_rule: nodes must be positive");
    if (alpha < 0.0 || alpha >= 1.0)
        throw DomainError("jacobi_left_rule: singularity exponent must lie in [0, 1)");
    SingularRule rule;
    rule.x.reserve(nodes);
    rule.w.reserve(nodes);
    if (alpha == 0.0) {
        const QuadRule& gl = gauss_legendre(nodes);
        for (int i = 0; i < nodes; ++i) {
            rule.x.push_back(length * 0.5 * (1.0 + gl.x[i]));
            rule.w.push_back(length * 0.5 * gl.w[i]);
        }
        return rule;
    }
    // ∫₀^L t^{-alpha} g(t) dt = (L/2)^{1-alpha} Σ W_i g(t_i) with Jacobi weight
    // (1+x)^{-alpha}; the effective raw-f weight gets the t^alpha factor back.
    const QuadRule& gj = gauss_jacobi(nodes, 0.0, -alpha);
    const double scale = std::pow(length * 0.5, 1.0 - alpha);
    for (int i = 0; i < nodes; ++i) {
        const double t = length * 0.5 * (1.0 + gj.x[i]);
        rule.x.push_back(t);
        rule.w.push_back(scale * gj.w[i] * std::pow(t, alpha));
    }
    return rule;
}

SingularRule geometric_panel_rule(double a, double b, int panels, int nodes_per_panel) {
    if (!(b > a)) throw DomainError("geometric_panel_rule: empty interval");
    SingularRule rule;
    const QuadRule& gl = gauss_legendre(nodes_per_panel);
    // panel edges: a + (b-a)/2^{panels-1-j}, densest near a
    std::vector<double> edges;
    edges.push_back(a);
    for (int j = panels - 1; j >= 1; --j) edges.push_back(a + (b - a) / std::pow(2.0, j));
    edges.push_back(b);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        const double h = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
        for (int i = 0; i < nodes_per_panel; ++i) {
            rule.x.push_back(c + h * gl.x[i]);
            rule.w.push_back(h * gl.w[i]);
        }
    }
    return rule;
}

SingularRule singular_rule(double alpha0, double alpha1, const QuadratureSpec& spec) {
    if (spec.nodes < 8) throw DomainError("QuadratureSpec: node count must be >= 8");
    if (alpha0 < 0.0 || alpha0 >= 1.0 || alpha1 < 0.0 || alpha1 >= 1.0)
        throw DomainError("singular_rule: exponents must lie in [0, 1)");
    SingularRule rule;
    if (spec.scheme == QuadratureSpec::Scheme::GaussJacobi) {
        append_jacobi_side(rule.x, rule.w, alpha0, spec.nodes, /*mirror=*/false);
        append_jacobi_side(rule.x, rule.w, alpha1, spec.nodes, /*mirror=*/true);
    } else {
        append_graded_side(rule.x, rule.w, alpha0, spec.nodes, spec.grading, false);
        append_graded_side(rule.x, rule.w, alpha1, spec.nodes, spec.grading, true);
    }
    return rule;
}

double singular_integral(const std::function<double(double)>& f,
                         double alpha0, double alpha1, const QuadratureSpec& spec) {
    const double coarse = apply_rule(singular_rule(alpha0, alpha1, spec), f);
    QuadratureSpec finer = spec;
    finer.nodes = spec.nodes + (spec.nodes + 1) / 2 + spec.nodes / 4;
    const double fine = apply_rule(singular_rule(alpha0, alpha1, finer), f);
    const double diff = std::abs(fine - coarse);
    if (diff > std::max(1e-9, 1e-6 * std::abs(fine)))
        throw QuadratureError(
            "singular_integral did not settle under refinement (declared exponent "
            "likely inconsistent with the integrand)");
    return fine;
}

}  // namespace choreo
