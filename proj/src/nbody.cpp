#include "choreo/nbody.hpp"

#include <cmath>
#include <numbers>

#include "choreo/kernels.hpp"

namespace choreo {

namespace {

constexpr double kPi = std::numbers::pi;

void check_state(const NBodyState& state) {
    const int n = state.n();
    if (n < 2) throw DomainError("NBodyState: need at least two bodies");
    if (state.dim < 2) throw DomainError("NBodyState: dim must be >= 2");
    const auto expect = static_cast<std::size_t>(n) * state.dim;
    if (state.positions.size() != expect || state.velocities.size() != expect)
        throw DomainError("NBodyState: array sizes disagree with N x dim");
}

[[noreturn]] void throw_collision(const NBodyState& state) {
    const int n = state.n();
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            for (int d = 0; d < state.dim; ++d) {
                const double diff =
                    state.positions[i * state.dim + d] - state.positions[j * state.dim + d];
                d2 += diff * diff;
            }
            if (d2 < best) {
                best = d2;
                bi = i;
                bj = j;
            }
        }
    throw CollisionError("bodies " + std::to_string(bi) + " and " + std::to_string(bj) +
                             " within the collision floor",
                         bi, bj, std::sqrt(best));
}

std::vector<double> accel_impl(const NBodyState& state, double sigma) {
    std::vector<double> acc(state.positions.size());
    const double mind2 = kernels::ops().pair_accel(state.positions.data(),
                                                   state.masses.data(), state.n(),
                                                   state.dim, sigma, acc.data());
    if (mind2 < kCollisionFloor * kCollisionFloor) throw_collision(state);
    return acc;
}

}  // namespace

std::vector<double> accelerations(const NBodyState& state, double sigma) {
    check_state(state);
    return accel_impl(state, sigma);
}

double potential_u(const NBodyState& state, double sigma) {
    check_state(state);
    const int n = state.n();
    double u = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            for (int d = 0; d < state.dim; ++d) {
                const double diff =
                    state.positions[i * state.dim + d] - state.positions[j * state.dim + d];
                d2 += diff * diff;
            }
            if (d2 < kCollisionFloor * kCollisionFloor) throw_collision(state);
            u += state.masses[i] * state.masses[j] * std::pow(d2, -sigma / 2.0);
        }
    return u;
}

double energy(const NBodyState& state, double sigma) {
    check_state(state);
    double kin = 0.0;
    for (int i = 0; i < state.n(); ++i) {
        double v2 = 0.0;
        for (int d = 0; d < state.dim; ++d) {
            const double v = state.velocities[i * state.dim + d];
            v2 += v * v;
        }
        kin += 0.5 * state.masses[i] * v2;
    }
    return kin - potential_u(state, sigma);
}

double omega_ngon(int N, double sigma) {
    if (N < 2) throw DomainError("omega_ngon: N must be >= 2");
    double sum = 0.0;
    for (int j = 1; j < N; ++j)
        sum += std::pow(2.0 * std::sin(kPi * j / N), -sigma);
    return std::sqrt(sigma / (2.0 * N) * sum);
}

NBodyState ngon_state(int N, double sigma, int dim) {
    if (dim != 2)
        throw DomainError("ngon_state: the N-gon relative equilibrium is planar (dim = 2)");
    if (N < 2) throw DomainError("ngon_state: N must be >= 2");
    NBodyState s;
    s.dim = 2;
    s.masses.assign(N, 1.0 / N);
    s.positions.resize(2 * static_cast<std::size_t>(N));
    s.velocities.resize(2 * static_cast<std::size_t>(N));
    const double omega = omega_ngon(N, sigma);
    double cx = 0.0, cy = 0.0;
    for (int j = 0; j < N; ++j) {
        const double ang = 2.0 * kPi * j / N;
        s.positions[2 * j] = std::cos(ang);
        s.positions[2 * j + 1] = std::sin(ang);
        cx += s.positions[2 * j];
        cy += s.positions[2 * j + 1];
    }
    cx /= N;
    cy /= N;
    for (int j = 0; j < N; ++j) {
        s.positions[2 * j] -= cx;
        s.positions[2 * j + 1] -= cy;
        s.velocities[2 * j] = -omega * s.positions[2 * j + 1];
        s.velocities[2 * j + 1] = omega * s.positions[2 * j];
    }
    return s;
}

NBodyState step(const NBodyState& state, double dt, double sigma) {
    check_state(state);
    if (dt == 0.0) throw DomainError("step: dt must be nonzero");
    NBodyState next = state;
    const std::vector<double> a0 = accel_impl(state, sigma);
    const std::size_t total = state.positions.size();
    for (std::size_t i = 0; i < total; ++i) {
        next.velocities[i] = state.velocities[i] + 0.5 * dt * a0[i];
        next.positions[i] = state.positions[i] + dt * next.velocities[i];
    }
    const std::vector<double> a1 = accel_impl(next, sigma);
    for (std::size_t i = 0; i < total; ++i) next.velocities[i] += 0.5 * dt * a1[i];
    next.time = state.time + dt;
    return next;
}

Trajectory simulate(const NBodyState& initial, double dt, long steps, double sigma,
                    int snapshot_stride) {
    check_state(initial);
    if (dt <= 0.0) throw DomainError("simulate: dt must be positive");
    if (steps < 1) throw DomainError("simulate: need at least one step");
    if (snapshot_stride < 1) throw DomainError("simulate: stride must be >= 1");
    Trajectory traj;
    traj.dt = dt * snapshot_stride;
    traj.states.reserve(static_cast<std::size_t>(steps / snapshot_stride) + 2);
    traj.states.push_back(initial);

    NBodyState cur = initial;
    std::vector<double> acc = accel_impl(cur, sigma);
    const std::size_t total = cur.positions.size();
    for (long s = 1; s <= steps; ++s) {
        for (std::size_t i = 0; i < total; ++i) {
            cur.velocities[i] += 0.5 * dt * acc[i];
            cur.positions[i] += dt * cur.velocities[i];
        }
        acc = accel_impl(cur, sigma);
        for (std::size_t i = 0; i < total; ++i) cur.velocities[i] += 0.5 * dt * acc[i];
        cur.time = initial.time + s * dt;
        if (s % snapshot_stride == 0) traj.states.push_back(cur);
    }
    return traj;
}

double choreography_error(const Trajectory& traj, double tau) {
    if (traj.states.size() < 2)
        throw DomainError("choreography_error: trajectory has no time extent");
    if (!(tau > 0.0)) throw DomainError("choreography_error: tau must be positive");
    const double t0 = traj.states.front().time;
    const double t_end = traj.states.back().time;
    if (t_end - t0 < tau)
        throw DomainError("choreography_error: trajectory shorter than one tau interval");
    const int n = traj.states.front().n();
    const int dim = traj.states.front().dim;
    const double dt = traj.dt;

    double worst = 0.0;
    for (std::size_t l = 0; l < traj.states.size(); ++l) {
        const double t = traj.states[l].time;
        const double target = t + tau;
        if (target > t_end + 1e-12) break;
        // linear interpolation of the shifted time
        double u = (target - t0) / dt;
        std::size_t i0 = static_cast<std::size_t>(u);
        if (i0 >= traj.states.size() - 1) i0 = traj.states.size() - 2;
        const double frac = u - static_cast<double>(i0);
        const NBodyState& sa = traj.states[i0];
        const NBodyState& sb = traj.states[i0 + 1];
        const NBodyState& now = traj.states[l];
        for (int i = 0; i < n; ++i) {
            const int inext = (i + 1) % n;
            double d2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                const double q_shift = (1.0 - frac) * sa.positions[i * dim + d] +
                                       frac * sb.positions[i * dim + d];
                const double diff = now.positions[inext * dim + d] - q_shift;
                d2 += diff * diff;
            }
            worst = std::max(worst, std::sqrt(d2));
        }
    }
    return worst;
}

double discrete_action(const Trajectory& traj, double sigma) {
    if (traj.states.size() < 2) throw DomainError("discrete_action: trajectory too short");
    const double span = traj.states.back().time - traj.states.front().time;
    if (std::abs(span - 1.0) > 1e-9)
        throw DomainError("discrete_action: trajectory must span exactly one time unit");
    double acc = 0.0;
    for (std::size_t l = 0; l < traj.states.size(); ++l) {
        const NBodyState& st = traj.states[l];
        double kin = 0.0;
        for (int i = 0; i < st.n(); ++i) {
            double v2 = 0.0;
            for (int d = 0; d < st.dim; ++d) {
                const double v = st.velocities[i * st.dim + d];
                v2 += v * v;
            }
            kin += 0.5 * st.masses[i] * v2;
        }
        const double lagr = kin + potential_u(st, sigma);
        const bool edge = (l == 0 || l + 1 == traj.states.size());
        acc += (edge ? 0.5 : 1.0) * traj.dt * lagr;
    }
    return acc;
}

ForceBridge discrete_force_vs_pv(int N, double sigma, const FourierLoop& loop, double s,
                                 const ModelParams& params, const PvOptions& opt) {
    if (N < 2) throw DomainError("discrete_force_vs_pv: N must be >= 2");
    const double idx = s * N;
    const int i = static_cast<int>(std::llround(idx));
    if (std::abs(idx - i) > 1e-9)
        throw DomainError("discrete_force_vs_pv: s must lie on the grid (i-1)/N");

    const int dim = loop.dim;
    ForceBridge out;
    out.discrete.assign(dim, 0.0);
    std::vector<double> delta(dim);
    for (int j = 0; j < N; ++j) {
        if (j == i % N) continue;
        // y(s) - y(s_j) = -loop_delta(s, s_j - s)
        loop_delta(loop, s, static_cast<double>(j) / N - s, delta);
        double d2 = 0.0;
        for (int d = 0; d < dim; ++d) d2 += delta[d] * delta[d];
        const double w = sigma / N * std::pow(d2, -(2.0 + sigma) / 2.0);
        for (int d = 0; d < dim; ++d) out.discrete[d] += w * delta[d];
    }
    out.continuum = pv_force(loop, s, params, opt);
    double g2 = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double diff = out.discrete[d] - out.continuum[d];
        g2 += diff * diff;
    }
    out.gap = std::sqrt(g2);
    return out;
}

}  // namespace choreo
