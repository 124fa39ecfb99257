#include "choreo/params.hpp"

#include <cmath>
#include <numbers>

namespace choreo {

namespace {
constexpr double kPi = std::numbers::pi;

void check_sigma(double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw DomainError("sigma must lie in the open interval (0, 1)");
}
}  // namespace

double ModelParams::predicted_minimum() const {
    return 2.0 * kPi * kPi * v2 * (1.0 + 2.0 / sigma);
}

double compute_c(double sigma, const QuadratureSpec& spec) {
    check_sigma(sigma);
    const SingularRule rule = singular_rule(sigma, sigma, spec);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        sum += rule.w[i] * std::pow(2.0 * std::sin(kPi * rule.x[i]), -sigma);
    return sum;
}

ModelParams make_params(double sigma, const QuadratureSpec& spec) {
    ModelParams p;
    p.sigma = sigma;
    p.c = compute_c(sigma, spec);
    p.v2 = sigma * p.c / (8.0 * kPi * kPi);
    return p;
}

double mu_weight(double s, const ModelParams& params) {
    check_sigma(params.sigma);
    if (!(s > 0.0 && s < 1.0))
        throw SingularityError("mu_weight: s must lie strictly inside (0, 1)");
    return std::pow(2.0 * std::sin(kPi * s), -(2.0 + params.sigma)) / params.c;
}

}  // namespace choreo
