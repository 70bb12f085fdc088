#pragma once

// Success-probability profile P(t) = P_av - dP cos(2(omega t + phi)),
// measurement timing, regime classification, and bounds on the initial
// weighted averages.

#include "grover/recursion.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace grover {

inline constexpr double kEqualAngleTolerance = 1e-9;
inline constexpr double kDistinctAngleFactor = 0.01;  // distinct when W_k <= 0.01 (beta - gamma)^2
inline constexpr double kProbabilitySlack = 1e-10;

template <typename Scalar = double>
struct OscillationProfile {
    Scalar P_av{};
    Scalar Delta_P{};
    Scalar omega{};
    Scalar phi{};  // in [0, pi)
    Scalar frozen_marked_prob{};
    Scalar W_k{};
    Scalar sigma_k2{};
};

template <typename Scalar>
OscillationProfile<Scalar> oscillation_profile(const SolutionCoefficients<Scalar>& c, const EigenStructure<Scalar>& e,
                                               const MomentSummary<Scalar>& m) {
    if (e.degenerate) throw DegenerateSpectrum("oscillation profile: degenerate spectrum, P(t) is not a single sinusoid");
    using std::abs;
    using std::fmod;
    constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
    OscillationProfile<Scalar> p;
    const Scalar r1 = abs(c.z1), r2 = abs(c.z2);
    p.Delta_P = Scalar(2) * m.W_k * r1 * r2;
    p.P_av = m.W_k * (r1 * r1 + r2 * r2 + m.sigma_k2);
    // 2 phi = arg z1 - arg z2 is fixed modulo 2 pi, which pins phi modulo pi.
    Scalar two_phi = fmod(c.phi1 - c.phi2, two_pi);
    if (two_phi < 0) two_phi += two_pi;
    p.phi = two_phi / 2;
    p.omega = e.omega;
    p.frozen_marked_prob = m.frozen_marked_prob;
    p.W_k = m.W_k;
    p.sigma_k2 = m.sigma_k2;
    return p;
}

template <typename Scalar>
OscillationProfile<Scalar> oscillation_profile(const AnalyticSolution<Scalar>& s) {
    if (!s.has_closed_form()) throw DegenerateSpectrum("oscillation profile: degenerate spectrum");
    return oscillation_profile(s.coefficients(), s.spectrum(), s.moments());
}

template <typename Scalar>
Scalar probability_at(const OscillationProfile<Scalar>& p, Scalar t) {
    using std::cos;
    return p.P_av - p.Delta_P * cos(Scalar(2) * (p.omega * t + p.phi)) + p.frozen_marked_prob;
}

enum class Regime { equal_angles, distinct_angles, borderline };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::equal_angles: return "equal-angles";
        case Regime::distinct_angles: return "distinct-angles";
        case Regime::borderline: return "borderline";
    }
    return "?";
}

struct RegimeInfo {
    Regime regime;
    const char* delta_p_order;  // predicted order of the oscillation amplitude
};

template <typename Scalar>
RegimeInfo classify_regime(Scalar beta, Scalar gamma, Scalar W_k) {
    const double gap = std::abs(static_cast<double>(beta - gamma));
    if (gap <= kEqualAngleTolerance) return {Regime::equal_angles, "O(1)"};
    if (static_cast<double>(W_k) <= kDistinctAngleFactor * gap * gap) return {Regime::distinct_angles, "O(W_k^1/2)"};
    return {Regime::borderline, "unclassified"};
}

template <typename Scalar = double>
struct MeasurementPlan {
    Scalar T_real{};
    std::int64_t T_int = 0;
    Scalar P_at_T{};
    Scalar P_max{};
    Regime regime = Regime::borderline;
    Scalar discreteness_loss{};  // P(T_real) - P(T_int)
};

/// Earliest real time with 2(omega T + phi) = pi (mod 2 pi), and the better
/// of its two neighbouring integers.
template <typename Scalar>
MeasurementPlan<Scalar> optimal_time(const OscillationProfile<Scalar>& p, Regime regime) {
    using std::ceil;
    using std::floor;
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    MeasurementPlan<Scalar> plan;
    Scalar x = pi - Scalar(2) * p.phi;  // in (-pi, pi]
    if (x < 0) x += 2 * pi;
    plan.T_real = x / (Scalar(2) * p.omega);
    const auto lo = static_cast<std::int64_t>(floor(plan.T_real));
    const auto hi = static_cast<std::int64_t>(ceil(plan.T_real));
    const Scalar p_lo = probability_at(p, static_cast<Scalar>(lo));
    const Scalar p_hi = probability_at(p, static_cast<Scalar>(hi));
    plan.T_int = p_hi > p_lo ? hi : lo;
    plan.P_at_T = p_hi > p_lo ? p_hi : p_lo;
    plan.P_max = p.P_av + p.Delta_P + p.frozen_marked_prob;
    plan.regime = regime;
    plan.discreteness_loss = probability_at(p, plan.T_real) - plan.P_at_T;
    return plan;
}

template <typename Scalar = double>
struct ClosedFormPmax {
    Scalar value{};
    Scalar ceiling{};         // 1 - W_l sigma_l^2
    Scalar residual_scale{};  // W_k: the neglected terms are of this order
};

/// Small-W_k approximation of P_max for beta = gamma, expressed through
/// |kbar'(0)|, |lbar'(0)|, their phases, sigma_l^2 and psi = (pi - beta)/2.
template <typename Scalar>
ClosedFormPmax<Scalar> p_max_closed_form(const MomentSummary<Scalar>& m, Scalar beta, Scalar gamma) {
    using std::abs;
    if (abs(static_cast<double>(beta - gamma)) > kEqualAngleTolerance) {
        throw RegimeError("closed-form P_max applies only when beta == gamma");
    }
    if (!m.kbar_defined || !m.lbar_defined) throw WeightError("closed-form P_max needs active marked and unmarked states");
    const Scalar psi = (std::numbers::pi_v<Scalar> - beta) / 2;
    const Scalar alpha_k = std::arg(m.kbar0), alpha_l = std::arg(m.lbar0);
    const Scalar wk_k2 = m.W_k * std::norm(m.kbar0);
    const Scalar wl_l2 = m.W_l * std::norm(m.lbar0);
    ClosedFormPmax<Scalar> out;
    out.ceiling = Scalar(1) - m.W_l * m.sigma_l2;
    out.value = out.ceiling - wl_l2 / 2 - wk_k2 / 2 +
                abs(wl_l2 * unit_phase(Scalar(2) * (psi + alpha_l - alpha_k)) + wk_k2) / 2;
    out.residual_scale = m.W_k;
    return out;
}

template <typename Scalar = double>
struct StrategyPlan {
    Scalar T1{}, T2{};
    Scalar P1{}, P2{};
    bool guarantee_ok = false;
    std::int64_t T1_int = 0, T2_int = 0;  // nearest integers
    Scalar P1_int{}, P2_int{};
    Scalar integer_loss{};  // max(P1, P2) - max(P1_int, P2_int)
};

/// Two runs measured pi/(2 omega) apart: one of the two cosines is
/// non-positive, so the better run reaches at least P_av >= P_max / 2.
template <typename Scalar>
StrategyPlan<Scalar> two_point_strategy(const OscillationProfile<Scalar>& p, Regime regime, Scalar T1 = 0) {
    if (regime != Regime::equal_angles) throw RegimeError("two-point strategy requires beta == gamma");
    using std::llround;
    using std::max;
    StrategyPlan<Scalar> s;
    s.T1 = T1;
    s.T2 = T1 + std::numbers::pi_v<Scalar> / (Scalar(2) * p.omega);
    s.P1 = probability_at(p, s.T1);
    s.P2 = probability_at(p, s.T2);
    const Scalar reference = p.P_av + p.frozen_marked_prob;
    const Scalar p_max = p.P_av + p.Delta_P + p.frozen_marked_prob;
    s.guarantee_ok = max(s.P1, s.P2) >= reference - Scalar(kProbabilitySlack) &&
                     reference >= p_max / 2 - Scalar(kProbabilitySlack);
    s.T1_int = static_cast<std::int64_t>(llround(s.T1));
    s.T2_int = static_cast<std::int64_t>(llround(s.T2));
    s.P1_int = probability_at(p, static_cast<Scalar>(s.T1_int));
    s.P2_int = probability_at(p, static_cast<Scalar>(s.T2_int));
    s.integer_loss = max(s.P1, s.P2) - max(s.P1_int, s.P2_int);
    return s;
}

template <typename Scalar = double>
struct BoundReport {
    Scalar kbar_abs{}, kbar_bound{};  // |kbar'(0)| <= r W_k^{-1/2}
    Scalar lbar_abs{}, lbar_bound{};  // |lbar'(0)| <= W_l^{-1/2}
    bool kbar_ok = false;
    bool lbar_ok = false;
};

template <typename Scalar>
BoundReport<Scalar> appendix_bounds(const MomentSummary<Scalar>& m, Index r) {
    using std::abs;
    using std::sqrt;
    if (!(m.W_k > Scalar(0)) || !(m.W_l > Scalar(0))) throw WeightError("appendix bounds: weights must be positive");
    constexpr Scalar rounding = Scalar(1e-12);
    BoundReport<Scalar> b;
    b.kbar_abs = abs(m.kbar0);
    b.lbar_abs = abs(m.lbar0);
    b.kbar_bound = static_cast<Scalar>(r) / sqrt(m.W_k);
    b.lbar_bound = Scalar(1) / sqrt(m.W_l);
    b.kbar_ok = b.kbar_abs <= b.kbar_bound * (1 + rounding);
    b.lbar_ok = b.lbar_abs <= b.lbar_bound * (1 + rounding);
    return b;
}

}  // namespace grover
