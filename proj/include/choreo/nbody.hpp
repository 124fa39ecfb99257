#pragma once

#include <vector>

#include "choreo/continuum.hpp"
#include "choreo/fourier_loop.hpp"
#include "choreo/params.hpp"

namespace choreo {

// Positions and velocities of N bodies, row-major N x dim. Masses default to
// 1/N each; the center of mass is kept at the origin.
struct NBodyState {
    int dim = 2;
    double time = 0.0;
    std::vector<double> masses;
    std::vector<double> positions;
    std::vector<double> velocities;

    int n() const { return static_cast<int>(masses.size()); }
};

// Bodies closer than this abort with a CollisionError.
inline constexpr double kCollisionFloor = 1e-9;

// a_i = -σ Σ_{j≠i} m_j (q_i - q_j) / ||q_i - q_j||^{2+σ}
std::vector<double> accelerations(const NBodyState& state, double sigma);

// U = Σ_{i<j} m_i m_j / ||q_i - q_j||^σ  (potential function, not energy)
double potential_u(const NBodyState& state, double sigma);
// E = Σ m_i ||v_i||²/2 - U
double energy(const NBodyState& state, double sigma);

// Angular velocity of the regular unit N-gon relative equilibrium:
// ω² = (σ/(2N)) Σ_{j=1..N-1} (2 sin(πj/N))^{-σ}
double omega_ngon(int N, double sigma);

// Unit N-gon rotating at omega_ngon; planar only.
NBodyState ngon_state(int N, double sigma, int dim = 2);

// One velocity-Verlet step.
NBodyState step(const NBodyState& state, double dt, double sigma);

struct Trajectory {
    std::vector<NBodyState> states;
    double dt = 0.0;  // spacing between stored snapshots
};

Trajectory simulate(const NBodyState& initial, double dt, long steps, double sigma,
                    int snapshot_stride = 1);

// max_i max_t ||q_{i+1}(t) - q_i(t+tau)||, indices mod N, linear interpolation
// in time. Zero for an exact simple choreography with shift tau.
double choreography_error(const Trajectory& traj, double tau);

// Trapezoid value of ∫₀¹ [Σ m_i ||v_i||²/2 + Σ_{i<j} m_i m_j/||q_i-q_j||^σ] dt.
// The trajectory must span exactly one time unit.
double discrete_action(const Trajectory& traj, double sigma);

// The Riemann-sum force felt by one of N loop-distributed bodies versus the
// principal-value limit.
struct ForceBridge {
    std::vector<double> discrete;
    std::vector<double> continuum;
    double gap = 0.0;
};
ForceBridge discrete_force_vs_pv(int N, double sigma, const FourierLoop& loop, double s,
                                 const ModelParams& params, const PvOptions& opt = {});

}  // namespace choreo
