#pragma once

#include <functional>
#include <vector>

#include "choreo/errors.hpp"

namespace choreo {

// Nodes and weights; the interval depends on the constructor.
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1, 1]. Cached per n.
const QuadRule& gauss_legendre(int n);

// n-point Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1],
// alpha, beta > -1. Cached per (n, alpha, beta).
const QuadRule& gauss_jacobi(int n, double alpha, double beta);

struct QuadratureSpec {
    enum class Scheme { GaussJacobi, GradedMidpoint };
    Scheme scheme = Scheme::GaussJacobi;
    int nodes = 64;        // per half-interval
    double grading = 0.0;  // graded-midpoint exponent; 0 = auto 2/(1-alpha)
};

// Rule for ∫₀¹ f(s) ds where f behaves like s^{-alpha0} at 0 and
// (1-s)^{-alpha1} at 1 (alpha = 0 means regular). The weights absorb the
// singular factors, so Σ w_i f(x_i) approximates ∫ f with f evaluated raw.
// All nodes are interior.
struct SingularRule {
    std::vector<double> x;
    std::vector<double> w;
};

SingularRule singular_rule(double alpha0, double alpha1, const QuadratureSpec& spec = {});

// Rule for ∫₀^length f(t) dt with f ~ t^{-alpha} at 0 and smooth elsewhere.
SingularRule jacobi_left_rule(double length, double alpha, int nodes);

// Composite Gauss-Legendre over [a, b] split into geometrically growing panels
// anchored at a (panel edges a + (b-a) scaled by powers of 2). Used for
// integrands that are smooth on (a, b] but have derivative scale ~ distance
// to a.
SingularRule geometric_panel_rule(double a, double b, int panels, int nodes_per_panel);

inline double apply_rule(const SingularRule& r, const std::function<double(double)>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(r.x[i]);
    return s;
}

// ∫₀¹ f(s) ds with endpoint singularities |s-b|^{-alpha_b}, alpha in [0, 1).
// Evaluates at two resolutions and raises QuadratureError when the refinement
// does not settle (e.g. the true singularity is stronger than declared).
double singular_integral(const std::function<double(double)>& f,
                         double alpha0, double alpha1,
                         const QuadratureSpec& spec = {});

}  // namespace choreo
