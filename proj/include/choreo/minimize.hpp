#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "choreo/action.hpp"

namespace choreo {

struct MinimizeOptions {
    int max_iterations = 4000;
    double grad_tol = 1e-5;  // 2-norm of the coefficient gradient
    int grid = 256;
    int t_nodes = 40;
    int max_restarts = 3;
    double armijo_c1 = 1e-4;
    bool precondition = true;  // scale descent by the inverse kinetic diagonal
    std::uint64_t seed = 0;    // used when no init loop is given
    // called after every accepted step (and at the start)
    std::function<void(const FourierLoop&, const ActionBreakdown&, double)> observer;
};

struct MinimizeResult {
    FourierLoop loop;
    double value = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    double circle_dist = 0.0;
};

// Descend the action with backtracking (Armijo) line search; restarts with a
// fresh seeded init when the search stalls near a collision configuration.
MinimizeResult minimize_action(const ModelParams& params, int dim, int K,
                               const std::optional<FourierLoop>& init,
                               const MinimizeOptions& opt = {});

// Random loop scaled so ∫ μ ξ_y ≈ 1 (the minimizing shell), away from
// collisions for the mode-decaying amplitudes used.
FourierLoop random_loop_on_shell(const Spectrum& spectrum, int dim, int K,
                                 std::uint64_t seed);

// Symmetry-reduced distance to a unit circle: normalized spectral tail of the
// k >= 2 modes, the deviation of ||a_1||² from 1/2, and the orthonormality
// defect of the frame (E1, E2) = (2 Re a_1, 2 Im a_1). Zero exactly on unit
// circles in any plane, any phase.
double circle_distance(const FourierLoop& loop);

struct ScanRow {
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double predicted_min = 0.0;
    double achieved_min = 0.0;
    double gap = 0.0;
    double circle_dist = 0.0;
    int iterations = 0;
    bool converged = false;
};

std::vector<ScanRow> scan_sigma(std::span<const double> sigmas, int dim, int K,
                                std::span<const std::uint64_t> seeds,
                                const MinimizeOptions& opt = {});

}  // namespace choreo
