#pragma once

// Brute-force evolution of the full state under G * I_f^gamma, with
// G = (1 - e^{i beta}) |eta><eta| - I applied as a rank-one update.

#include "grover/state.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace grover {

inline constexpr std::int64_t kMaxSteps = 10'000'000;

template <typename Scalar>
Complex<Scalar> unit_phase(Scalar angle) {
    using std::cos;
    using std::sin;
    return {cos(angle), sin(angle)};
}

/// Multiplies every marked amplitude by e^{i gamma}.
template <typename Scalar>
void rotate_marked_in_place(QuantumState<Scalar>& state, const MarkedSet& marked, Scalar gamma) {
    const Complex<Scalar> phase = unit_phase(gamma);
    for (Index i : marked.indices()) state[i] *= phase;
}

template <typename Scalar>
QuantumState<Scalar> apply_oracle_rotation(QuantumState<Scalar> state, const MarkedSet& marked, Scalar gamma) {
    rotate_marked_in_place(state, marked, gamma);
    return state;
}

template <typename Scalar>
Complex<Scalar> inner(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
    Complex<Scalar> s{};
    for (Index i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

template <typename Scalar>
void diffuse_in_place(QuantumState<Scalar>& state, const EtaVector<Scalar>& eta, Scalar beta) {
    const Complex<Scalar> coef = (Scalar(1) - unit_phase(beta)) * inner(eta.values, state);
    for (Index i = 0; i < state.size(); ++i) state[i] = coef * eta[i] - state[i];
}

/// (1 - e^{i beta}) <eta|state> eta - state, in O(N).
template <typename Scalar>
QuantumState<Scalar> apply_diffusion(QuantumState<Scalar> state, const EtaVector<Scalar>& eta, Scalar beta) {
    if (state.size() != eta.size()) throw SizeError("diffusion: state/eta dimension mismatch");
    diffuse_in_place(state, eta, beta);
    return state;
}

/// Dense form of the diffusion operator; comparison path only.
template <typename Scalar>
DenseOperator<Scalar> diffusion_matrix(const EtaVector<Scalar>& eta, Scalar beta) {
    const Index n = eta.size();
    return (Scalar(1) - unit_phase(beta)) * (eta.values * eta.values.adjoint()) -
           DenseOperator<Scalar>::Identity(n, n);
}

template <typename Scalar>
QuantumState<Scalar> apply_diffusion_dense(const QuantumState<Scalar>& state, const EtaVector<Scalar>& eta,
                                           Scalar beta) {
    return diffusion_matrix(eta, beta) * state;
}

template <typename Scalar>
void step_in_place(QuantumState<Scalar>& state, const AlgorithmParams<Scalar>& p) {
    rotate_marked_in_place(state, p.marked, p.gamma);
    diffuse_in_place(state, p.eta, p.beta);
}

/// One iteration G * I_f^gamma: oracle rotation first, then diffusion.
template <typename Scalar>
QuantumState<Scalar> grover_step(QuantumState<Scalar> state, const AlgorithmParams<Scalar>& p) {
    if (state.size() != p.dimension()) throw SizeError("grover step: state dimension mismatch");
    step_in_place(state, p);
    return state;
}

/// (G * I_f^gamma)^dagger = I_f^{-gamma} * G(-beta).
template <typename Scalar>
QuantumState<Scalar> grover_step_inverse(QuantumState<Scalar> state, const AlgorithmParams<Scalar>& p) {
    diffuse_in_place(state, p.eta, -p.beta);
    rotate_marked_in_place(state, p.marked, -p.gamma);
    return state;
}

template <typename Scalar>
Scalar marked_probability(const QuantumState<Scalar>& state, const MarkedSet& marked) {
    Scalar p{};
    for (Index i : marked.indices()) p += std::norm(state[i]);
    return p;
}

template <typename Scalar = double>
struct Trajectory {
    std::vector<QuantumState<Scalar>> states;  // states[t], t = 0..t_end
    AlgorithmParams<Scalar> params;

    std::int64_t t_end() const noexcept { return static_cast<std::int64_t>(states.size()) - 1; }
    const QuantumState<Scalar>& operator[](std::int64_t t) const { return states[static_cast<std::size_t>(t)]; }
};

inline void check_step_limit(std::int64_t t_end) {
    if (t_end < 0) throw LimitError("run: t_end must be non-negative");
    if (t_end > kMaxSteps) {
        throw LimitError("run: t_end " + std::to_string(t_end) + " exceeds the limit of " + std::to_string(kMaxSteps));
    }
}

/// Calls visit(t, state) for t = 0..t_end while holding only the current state.
template <typename Scalar, typename Visitor>
void run_streaming(QuantumState<Scalar> state, const AlgorithmParams<Scalar>& p, std::int64_t t_end,
                   Visitor&& visit) {
    check_step_limit(t_end);
    if (state.size() != p.dimension()) throw SizeError("run: state dimension mismatch");
    visit(std::int64_t{0}, std::as_const(state));
    for (std::int64_t t = 1; t <= t_end; ++t) {
        step_in_place(state, p);
        visit(t, std::as_const(state));
    }
}

template <typename Scalar>
Trajectory<Scalar> run(const QuantumState<Scalar>& state0, const AlgorithmParams<Scalar>& p, std::int64_t t_end) {
    check_step_limit(t_end);
    Trajectory<Scalar> traj{{}, p};
    traj.states.reserve(static_cast<std::size_t>(t_end) + 1);
    run_streaming(state0, p, t_end, [&](std::int64_t, const QuantumState<Scalar>& s) { traj.states.push_back(s); });
    return traj;
}

}  // namespace grover
