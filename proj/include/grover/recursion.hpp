#pragma once

// Exact solution of the iteration through the weighted averages
// r(t) = (kbar'(t), lbar'(t)), which obey r(t+1) = A r(t), plus the per-state
// deviations from those averages, which are constants of motion up to a
// known phase.

#include "grover/simulator.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace grover {

inline constexpr double kWeightSumTolerance = 1e-12;
inline constexpr double kDegeneracyGap = 1e-9;   // |lambda+ - lambda-| below this is degenerate
inline constexpr double kOffDiagonalFloor = 1e-12;

template <typename Scalar = double>
using EvolutionMatrix = Matrix2<Scalar>;

template <typename Scalar>
EvolutionMatrix<Scalar> build_evolution_matrix(Scalar beta, Scalar gamma, Scalar W_k, Scalar W_l) {
    using std::abs;
    if (abs(static_cast<double>(W_k + W_l) - 1.0) > kWeightSumTolerance) {
        throw WeightError("evolution matrix: W_k + W_l must equal 1");
    }
    const Complex<Scalar> g = Scalar(1) - unit_phase(beta);  // 1 - e^{i beta}
    const Complex<Scalar> eg = unit_phase(gamma);
    EvolutionMatrix<Scalar> A;
    A(0, 0) = g * eg * W_k - eg;
    A(0, 1) = g * W_l;
    A(1, 0) = g * eg * W_k;
    A(1, 1) = g * W_l - Scalar(1);
    return A;
}

template <typename Scalar>
EvolutionMatrix<Scalar> build_evolution_matrix(const AlgorithmParams<Scalar>& p) {
    const Weights<Scalar> w = compute_weights(p.eta, p.marked);
    return build_evolution_matrix(p.beta, p.gamma, w.marked, w.unmarked);
}

/// Roots of lambda^2 - tr(A) lambda + det(A). The larger-magnitude root comes
/// from the quadratic formula, the other from the product of the roots.
template <typename Scalar>
std::pair<Complex<Scalar>, Complex<Scalar>> characteristic_roots(const EvolutionMatrix<Scalar>& A) {
    using std::abs;
    using std::sqrt;
    const Complex<Scalar> tr = A.trace();
    const Complex<Scalar> det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    const Complex<Scalar> disc = sqrt(tr * tr - Scalar(4) * det);
    const Complex<Scalar> big = abs(tr + disc) >= abs(tr - disc) ? (tr + disc) / Scalar(2) : (tr - disc) / Scalar(2);
    if (big == Complex<Scalar>{}) return {big, big};
    return {big, det / big};
}

/// omega in [0, pi] with cos(omega) = W_k cos((b+g)/2) + W_l cos((b-g)/2),
/// evaluated through the half-angle sums so small and near-pi frequencies
/// keep full relative precision.
template <typename Scalar>
Scalar rotation_frequency(Scalar beta, Scalar gamma, Scalar W_k, Scalar W_l) {
    using std::atan2;
    using std::cos;
    using std::max;
    using std::sin;
    using std::sqrt;
    const Scalar sp = sin((beta + gamma) / 4), sm = sin((beta - gamma) / 4);
    const Scalar cp = cos((beta + gamma) / 4), cm = cos((beta - gamma) / 4);
    const Scalar s2 = max(Scalar(0), W_k * sp * sp + W_l * sm * sm);
    const Scalar c2 = max(Scalar(0), W_k * cp * cp + W_l * cm * cm);
    return Scalar(2) * atan2(sqrt(s2), sqrt(c2));
}

template <typename Scalar = double>
struct EigenStructure {
    Complex<Scalar> lambda_plus{};   // roots of the characteristic polynomial
    Complex<Scalar> lambda_minus{};
    Scalar omega_plus{};             // pi + (beta+gamma)/2 + omega
    Scalar omega_minus{};            // pi + (beta+gamma)/2 - omega
    Scalar omega{};
    bool degenerate = false;
    Scalar root_mismatch{};          // max |lambda_pm - e^{i omega_pm}|
};

/// lambda_plus is the root whose phase is nearest pi + (beta+gamma)/2 + omega.
template <typename Scalar>
EigenStructure<Scalar> eigen_decompose(const EvolutionMatrix<Scalar>& A, Scalar beta, Scalar gamma, Scalar W_k,
                                       Scalar W_l) {
    using std::abs;
    EigenStructure<Scalar> e;
    e.omega = rotation_frequency(beta, gamma, W_k, W_l);
    const Scalar center = std::numbers::pi_v<Scalar> + (beta + gamma) / Scalar(2);
    e.omega_plus = center + e.omega;
    e.omega_minus = center - e.omega;
    const Complex<Scalar> up = unit_phase(e.omega_plus), um = unit_phase(e.omega_minus);

    const auto [r1, r2] = characteristic_roots(A);
    if (abs(r1 - up) + abs(r2 - um) <= abs(r2 - up) + abs(r1 - um)) {
        e.lambda_plus = r1;
        e.lambda_minus = r2;
    } else {
        e.lambda_plus = r2;
        e.lambda_minus = r1;
    }
    using std::max;
    e.root_mismatch = max(abs(e.lambda_plus - up), abs(e.lambda_minus - um));
    // A vanishing b leaves an eigenvector with zero first component, which
    // the (1, (lambda - a)/b) eigenvector form cannot express.
    e.degenerate = static_cast<double>(abs(e.lambda_plus - e.lambda_minus)) < kDegeneracyGap ||
                   static_cast<double>(abs(A(0, 1))) < kOffDiagonalFloor;
    return e;
}

template <typename Scalar>
EigenStructure<Scalar> eigen_decompose(const EvolutionMatrix<Scalar>& A, const AlgorithmParams<Scalar>& p) {
    const Weights<Scalar> w = compute_weights(p.eta, p.marked);
    return eigen_decompose(A, p.beta, p.gamma, w.marked, w.unmarked);
}

template <typename Scalar = double>
struct SolutionCoefficients {
    Complex<Scalar> z1{}, z2{}, z3{}, z4{};
    Scalar phi1{}, phi2{};  // arg z1, arg z2
};

namespace detail {

// Second component of the eigenvector (1, v) for eigenvalue lambda. Uses
// (lambda - a)/b or the equivalent c/(lambda - d), whichever divides by more.
template <typename Scalar>
Complex<Scalar> eigenvector_ratio(const EvolutionMatrix<Scalar>& A, const Complex<Scalar>& lambda) {
    using std::abs;
    const Complex<Scalar> ld = lambda - A(1, 1);
    if (abs(A(0, 1)) >= abs(ld)) return (lambda - A(0, 0)) / A(0, 1);
    return A(1, 0) / ld;
}

}  // namespace detail

/// z1..z4 of kbar'(t) = z1 e^{i w+ t} - z2 e^{i w- t}, lbar'(t) = z3 e^{i w+ t} - z4 e^{i w- t}.
/// The eigenvalues enter as the exact unit-modulus phases e^{i omega_pm}.
template <typename Scalar>
SolutionCoefficients<Scalar> solve_coefficients(const MomentSummary<Scalar>& m, const EvolutionMatrix<Scalar>& A,
                                                const EigenStructure<Scalar>& e) {
    if (e.degenerate) throw DegenerateSpectrum("closed form unavailable for a degenerate spectrum; use averages_by_power");
    if (!m.kbar_defined) throw WeightError("closed form needs at least one active marked state");
    const Complex<Scalar> lp = unit_phase(e.omega_plus), lm = unit_phase(e.omega_minus);
    const Complex<Scalar> a = A(0, 0), b = A(0, 1);
    const Complex<Scalar> denom = lm - lp;
    SolutionCoefficients<Scalar> c;
    c.z1 = ((lm - a) * m.kbar0 - b * m.lbar0) / denom;
    c.z2 = ((lp - a) * m.kbar0 - b * m.lbar0) / denom;
    c.z3 = detail::eigenvector_ratio(A, lp) * c.z1;
    c.z4 = detail::eigenvector_ratio(A, lm) * c.z2;
    c.phi1 = std::arg(c.z1);
    c.phi2 = std::arg(c.z2);
    return c;
}

/// Closed-form (kbar'(t), lbar'(t)).
template <typename Scalar>
Vector2<Scalar> averages_at(const SolutionCoefficients<Scalar>& c, const EigenStructure<Scalar>& e, std::int64_t t) {
    const Scalar ts = static_cast<Scalar>(t);
    const Complex<Scalar> ep = unit_phase(e.omega_plus * ts), em = unit_phase(e.omega_minus * ts);
    return Vector2<Scalar>(c.z1 * ep - c.z2 * em, c.z3 * ep - c.z4 * em);
}

/// A^t r0 by binary exponentiation; valid for any spectrum.
template <typename Scalar>
Vector2<Scalar> averages_by_power(const EvolutionMatrix<Scalar>& A, Vector2<Scalar> r0, std::int64_t t) {
    if (t < 0) throw LimitError("averages_by_power: t must be non-negative");
    EvolutionMatrix<Scalar> base = A;
    while (t > 0) {
        if (t & 1) r0 = (base * r0).eval();
        base = (base * base).eval();
        t >>= 1;
    }
    return r0;
}

template <typename Scalar>
Vector2<Scalar> averages_by_power(const EvolutionMatrix<Scalar>& A, const MomentSummary<Scalar>& m, std::int64_t t) {
    return averages_by_power(A, Vector2<Scalar>(m.kbar0, m.lbar0), t);
}

/// Per-state offsets from the class averages at t = 0. Frozen states keep
/// their initial amplitude instead, since they only pick up a phase.
template <typename Scalar = double>
struct DeviationTable {
    StateVector<Scalar> delta;             // k'_i(0) - kbar'(0) or l'_i(0) - lbar'(0); 0 when frozen
    StateVector<Scalar> frozen_amplitude;  // amp_i(0) when frozen; 0 otherwise
    std::vector<char> frozen;
};

template <typename Scalar>
DeviationTable<Scalar> compute_deviations(const QuantumState<Scalar>& state0, const EtaVector<Scalar>& eta,
                                          const MarkedSet& marked, const MomentSummary<Scalar>& m,
                                          double frozen_threshold = kFrozenThreshold) {
    const Index n = eta.size();
    if (state0.size() != n || marked.dimension() != n) throw SizeError("deviations: dimension mismatch");
    DeviationTable<Scalar> d;
    d.delta = StateVector<Scalar>::Zero(n);
    d.frozen_amplitude = StateVector<Scalar>::Zero(n);
    d.frozen.assign(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i) {
        if (is_frozen(eta[i], frozen_threshold)) {
            d.frozen[static_cast<std::size_t>(i)] = 1;
            d.frozen_amplitude[i] = state0[i];
            continue;
        }
        d.delta[i] = state0[i] / eta[i] - (marked.contains(i) ? m.kbar0 : m.lbar0);
    }
    return d;
}

/// k_i(t) = eta_i [kbar'(t) + (-1)^t e^{i gamma t} dk_i],  l_i(t) = eta_i [lbar'(t) + (-1)^t dl_i].
/// Frozen amplitudes advance by -e^{i gamma} (marked) or -1 (unmarked) per step.
template <typename Scalar>
QuantumState<Scalar> reconstruct_state(const Vector2<Scalar>& averages, const DeviationTable<Scalar>& d,
                                       const EtaVector<Scalar>& eta, const MarkedSet& marked, Scalar gamma,
                                       std::int64_t t) {
    const Index n = eta.size();
    const Scalar sign = (t % 2 == 0) ? Scalar(1) : Scalar(-1);
    const Complex<Scalar> marked_phase = sign * unit_phase(gamma * static_cast<Scalar>(t));
    QuantumState<Scalar> out(n);
    for (Index i = 0; i < n; ++i) {
        const bool mk = marked.contains(i);
        const Complex<Scalar> phase = mk ? marked_phase : Complex<Scalar>(sign);
        if (d.frozen[static_cast<std::size_t>(i)]) {
            out[i] = phase * d.frozen_amplitude[i];
        } else {
            out[i] = eta[i] * ((mk ? averages[0] : averages[1]) + phase * d.delta[i]);
        }
    }
    return out;
}

/// The full analytic model of one experiment: moments, matrix, spectrum,
/// and (when the spectrum allows it) the closed-form coefficients.
template <typename Scalar = double>
class AnalyticSolution {
public:
    AnalyticSolution(const AlgorithmParams<Scalar>& p, const QuantumState<Scalar>& state0,
                     double frozen_threshold = kFrozenThreshold)
        : eta_(p.eta), marked_(p.marked), gamma_(p.gamma) {
        moments_ = compute_moments(state0, p.eta, p.marked, frozen_threshold);
        if (!moments_.kbar_defined) throw WeightError("analytic model: every marked state is frozen (W_k = 0)");
        A_ = build_evolution_matrix(p.beta, p.gamma, moments_.W_k, moments_.W_l);
        spectrum_ = eigen_decompose(A_, p.beta, p.gamma, moments_.W_k, moments_.W_l);
        if (!spectrum_.degenerate) coeffs_ = solve_coefficients(moments_, A_, spectrum_);
        deviations_ = compute_deviations(state0, p.eta, p.marked, moments_, frozen_threshold);
    }

    const MomentSummary<Scalar>& moments() const noexcept { return moments_; }
    const EvolutionMatrix<Scalar>& matrix() const noexcept { return A_; }
    const EigenStructure<Scalar>& spectrum() const noexcept { return spectrum_; }
    const DeviationTable<Scalar>& deviations() const noexcept { return deviations_; }
    bool has_closed_form() const noexcept { return coeffs_.has_value(); }

    const SolutionCoefficients<Scalar>& coefficients() const {
        if (!coeffs_) throw DegenerateSpectrum("no closed-form coefficients for a degenerate spectrum");
        return *coeffs_;
    }

    Vector2<Scalar> averages(std::int64_t t) const {
        return coeffs_ ? averages_at(*coeffs_, spectrum_, t) : averages_by_power(A_, moments_, t);
    }

    QuantumState<Scalar> state_at(std::int64_t t) const {
        return reconstruct_state(averages(t), deviations_, eta_, marked_, gamma_, t);
    }

    /// W_k (|kbar'(t)|^2 + sigma_k^2) plus the frozen marked mass.
    Scalar marked_probability_at(std::int64_t t) const {
        return moments_.W_k * (std::norm(averages(t)[0]) + moments_.sigma_k2) + moments_.frozen_marked_prob;
    }

private:
    EtaVector<Scalar> eta_;
    MarkedSet marked_;
    Scalar gamma_;
    MomentSummary<Scalar> moments_;
    EvolutionMatrix<Scalar> A_;
    EigenStructure<Scalar> spectrum_;
    std::optional<SolutionCoefficients<Scalar>> coeffs_;
    DeviationTable<Scalar> deviations_;
};

}  // namespace grover
