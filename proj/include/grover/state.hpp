#pragma once

// Diffusion-vector construction, seeded test inputs, and the weights and
// moments of an initial distribution.

#include "grover/types.hpp"

#include <cmath>
#include <random>
#include <string>

namespace grover {

inline constexpr double kFrozenThreshold = 1e-12;   // |eta_i| at or below this is frozen
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitarityTolerance = 1e-8;
inline constexpr int kMaxQubits = 24;

template <typename Scalar>
Scalar squared_norm(const StateVector<Scalar>& v) {
    // Sequential ascending accumulation, not Eigen's blocked reduction, so the
    // result does not depend on vectorization.
    Scalar s{};
    for (Index i = 0; i < v.size(); ++i) s += std::norm(v[i]);
    return s;
}

/// Throws unless `state` has N >= 2 finite entries and unit norm within `tol`.
template <typename Scalar>
void validate_state(const StateVector<Scalar>& state, double tol = kNormTolerance) {
    using std::isfinite;
    if (state.size() < 2) throw SizeError("state: need at least 2 amplitudes");
    for (Index i = 0; i < state.size(); ++i) {
        if (!isfinite(state[i].real()) || !isfinite(state[i].imag())) {
            throw NormError("state: non-finite amplitude at index " + std::to_string(i));
        }
    }
    const double dev = std::abs(static_cast<double>(squared_norm(state)) - 1.0);
    if (dev > tol) throw NormError("state: norm deviates from 1 by " + std::to_string(dev));
}

template <typename Scalar = double>
EtaVector<Scalar> make_eta_hadamard(int qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw SizeError("hadamard eta: qubit count " + std::to_string(qubits) + " outside [1, " +
                        std::to_string(kMaxQubits) + "]");
    }
    const Index n = Index{1} << qubits;
    using std::sqrt;
    EtaVector<Scalar> eta;
    eta.values = StateVector<Scalar>::Constant(n, Complex<Scalar>(Scalar(1) / sqrt(Scalar(n)), 0));
    eta.source = EtaSource::hadamard;
    return eta;
}

/// Largest entrywise deviation of U^dagger U from the identity.
template <typename Scalar>
double unitarity_deviation(const DenseOperator<Scalar>& u) {
    const DenseOperator<Scalar> g = u.adjoint() * u;
    double worst = 0;
    for (Index j = 0; j < g.cols(); ++j)
        for (Index i = 0; i < g.rows(); ++i) {
            const Complex<Scalar> expect = i == j ? Scalar(1) : Scalar(0);
            worst = std::max(worst, static_cast<double>(std::abs(g(i, j) - expect)));
        }
    return worst;
}

/// eta = U|s>, column s of U.
template <typename Scalar>
EtaVector<Scalar> make_eta_from_unitary(const DenseOperator<Scalar>& u, Index s,
                                        double tol = kUnitarityTolerance) {
    if (u.rows() != u.cols() || u.rows() < 2) throw SizeError("unitary eta: U must be square with N >= 2");
    if (s < 0 || s >= u.cols()) {
        throw IndexError("unitary eta: basis index " + std::to_string(s) + " outside [0, " +
                         std::to_string(u.cols()) + ")");
    }
    const double dev = unitarity_deviation(u);
    if (dev > tol) {
        throw UnitarityError("unitary eta: U is not unitary, max |U^dag U - I| = " + std::to_string(dev), dev);
    }
    EtaVector<Scalar> eta;
    eta.values = u.col(s);
    eta.source = EtaSource::explicit_unitary;
    eta.basis_index = s;
    return eta;
}

template <typename Scalar>
EtaVector<Scalar> make_eta_from_vector(StateVector<Scalar> values, double tol = kNormTolerance) {
    validate_state(values, tol);
    EtaVector<Scalar> eta;
    eta.values = std::move(values);
    eta.source = EtaSource::explicit_vector;
    return eta;
}

/// N complex entries from 2N standard normals drawn in (re, im) order.
template <typename Scalar = double>
StateVector<Scalar> gaussian_vector(std::uint64_t seed, Index n) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    StateVector<Scalar> v(n);
    for (Index i = 0; i < n; ++i) {
        const double re = normal(gen);
        const double im = normal(gen);
        v[i] = Complex<Scalar>(static_cast<Scalar>(re), static_cast<Scalar>(im));
    }
    return v;
}

template <typename Scalar>
StateVector<Scalar> normalized(StateVector<Scalar> v) {
    using std::sqrt;
    const Scalar norm = sqrt(squared_norm(v));
    if (!(norm > Scalar(0))) throw NormError("normalize: zero vector");
    for (Index i = 0; i < v.size(); ++i) v[i] /= norm;
    return v;
}

/// Deterministic random unit vector; same seed gives the same bits.
template <typename Scalar = double>
QuantumState<Scalar> random_state(std::uint64_t seed, Index n) {
    if (n < 2) throw SizeError("random state: N must be at least 2");
    return normalized(gaussian_vector<Scalar>(seed, n));
}

template <typename Scalar = double>
EtaVector<Scalar> make_eta_random(std::uint64_t seed, Index n) {
    if (n < 2) throw SizeError("random eta: N must be at least 2");
    EtaVector<Scalar> eta;
    eta.values = random_state<Scalar>(seed, n);
    eta.source = EtaSource::seeded_random;
    eta.seed = seed;
    return eta;
}

/// Seeded unitary: QR of a complex Gaussian matrix with the phases of R's
/// diagonal moved into Q, so R has a real positive diagonal.
template <typename Scalar = double>
DenseOperator<Scalar> random_unitary(std::uint64_t seed, Index n) {
    if (n < 1) throw SizeError("random unitary: N must be positive");
    const StateVector<Scalar> entries = gaussian_vector<Scalar>(seed, n * n);
    const DenseOperator<Scalar> g = Eigen::Map<const DenseOperator<Scalar>>(entries.data(), n, n);
    Eigen::HouseholderQR<DenseOperator<Scalar>> qr(g);
    DenseOperator<Scalar> q = qr.householderQ();
    const DenseOperator<Scalar>& r = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        const Complex<Scalar> d = r(j, j);
        const Scalar m = std::abs(d);
        if (m > Scalar(0)) q.col(j) *= d / m;
    }
    return q;
}

template <typename Scalar>
Weights<Scalar> compute_weights(const EtaVector<Scalar>& eta, const MarkedSet& marked) {
    if (eta.size() != marked.dimension()) throw SizeError("weights: eta/marked dimension mismatch");
    Weights<Scalar> w;
    for (Index i = 0; i < eta.size(); ++i) {
        (marked.contains(i) ? w.marked : w.unmarked) += std::norm(eta[i]);
    }
    return w;
}

template <typename Scalar>
bool is_frozen(const Complex<Scalar>& eta_i, double threshold = kFrozenThreshold) {
    return static_cast<double>(std::abs(eta_i)) <= threshold;
}

/// Weighted averages and variances of k'_i(0) = k_i(0)/eta_i (marked) and
/// l'_i(0) (unmarked) over the active states, plus the probability mass parked
/// on frozen states (|eta_i| <= threshold), which the iteration cannot move.
///
/// The averages use conj(eta_i) * amp_i and the variances |amp_i - eta_i * avg|^2,
/// both algebraically identical to the |eta_i|^2-weighted forms in k' but free
/// of the division by eta_i.
template <typename Scalar>
MomentSummary<Scalar> compute_moments(const QuantumState<Scalar>& state0, const EtaVector<Scalar>& eta,
                                      const MarkedSet& marked, double frozen_threshold = kFrozenThreshold) {
    const Index n = eta.size();
    if (state0.size() != n || marked.dimension() != n) throw SizeError("moments: dimension mismatch");

    const Weights<Scalar> w = compute_weights(eta, marked);
    MomentSummary<Scalar> m;
    m.W_k = w.marked;
    m.W_l = w.unmarked;

    Scalar active_k{}, active_l{};
    Complex<Scalar> sum_k{}, sum_l{};
    for (Index i = 0; i < n; ++i) {
        const bool mk = marked.contains(i);
        if (is_frozen(eta[i], frozen_threshold)) {
            (mk ? m.frozen_marked_prob : m.frozen_unmarked_prob) += std::norm(state0[i]);
            continue;
        }
        const Complex<Scalar> overlap = std::conj(eta[i]) * state0[i];
        if (mk) {
            active_k += std::norm(eta[i]);
            sum_k += overlap;
        } else {
            active_l += std::norm(eta[i]);
            sum_l += overlap;
        }
    }
    m.kbar_defined = active_k > Scalar(0);
    m.lbar_defined = active_l > Scalar(0);
    if (m.kbar_defined) m.kbar0 = sum_k / active_k;
    if (m.lbar_defined) m.lbar0 = sum_l / active_l;

    Scalar var_k{}, var_l{};
    for (Index i = 0; i < n; ++i) {
        if (is_frozen(eta[i], frozen_threshold)) continue;
        if (marked.contains(i))
            var_k += std::norm(state0[i] - eta[i] * m.kbar0);
        else
            var_l += std::norm(state0[i] - eta[i] * m.lbar0);
    }
    using std::max;
    m.sigma_k2 = m.kbar_defined ? max(Scalar(0), var_k / active_k) : Scalar(0);
    m.sigma_l2 = m.lbar_defined ? max(Scalar(0), var_l / active_l) : Scalar(0);
    return m;
}

}  // namespace grover
