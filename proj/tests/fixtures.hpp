#pragma once

// Seeded experiment generators shared by the property tests and the
// acceptance suite.

#include "grover/grover.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace grover::fixtures {

struct Experiment {
    AlgorithmParams<double> params;
    QuantumState<double> state0;
};

inline double two_pi() { return 2 * std::acos(-1.0); }

inline std::vector<Index> sample_marked(std::mt19937_64& gen, Index n, Index r) {
    std::vector<Index> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), Index{0});
    std::shuffle(all.begin(), all.end(), gen);
    all.resize(static_cast<std::size_t>(r));
    return all;
}

inline double open_angle(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, two_pi());
    double a = 0;
    while (a == 0) a = u(gen);
    return a;
}

/// Random eta whose entries all have modulus above `min_modulus`.
inline EtaVector<double> spread_eta(std::uint64_t seed, Index n, double min_modulus) {
    for (std::uint64_t k = 0;; ++k) {
        auto eta = make_eta_random(seed * 1000003u + k, n);
        if (eta.values.cwiseAbs().minCoeff() > min_modulus) return eta;
    }
}

/// N in {4, ..., 64}, r in [1, N/2], random angles (beta == gamma when
/// `equal_angles`), random eta with min |eta_i| > 1e-6, random initial state.
inline Experiment random_experiment(std::uint64_t seed, bool equal_angles) {
    std::mt19937_64 gen(seed);
    const Index sizes[] = {4, 8, 16, 32, 64};
    const Index n = sizes[std::uniform_int_distribution<int>(0, 4)(gen)];
    const Index r = std::uniform_int_distribution<Index>(1, n / 2)(gen);
    auto marked = sample_marked(gen, n, r);
    const double beta = open_angle(gen);
    const double gamma = equal_angles ? beta : open_angle(gen);
    auto eta = spread_eta(seed, n, 1e-6);
    auto state = random_state(seed ^ 0x9e3779b97f4a7c15ull, n);
    return {AlgorithmParams<double>(beta, gamma, std::move(eta), MarkedSet(std::move(marked), n)), std::move(state)};
}

/// Random eta rescaled so the marked weight is exactly `w_k`.
inline EtaVector<double> eta_with_weight(std::uint64_t seed, const MarkedSet& marked, double w_k) {
    auto eta = make_eta_random(seed, marked.dimension());
    const auto w = compute_weights(eta, marked);
    for (Index i = 0; i < eta.size(); ++i) {
        eta.values[i] *= marked.contains(i) ? std::sqrt(w_k / w.marked) : std::sqrt((1 - w_k) / w.unmarked);
    }
    return eta;
}

/// Half the probability on the marked states (in proportion to eta there),
/// half spread over the unmarked states along eta. Then |kbar'(0)| is of
/// order W_k^{-1/2}, the largest the initial average can be.
inline QuantumState<double> marked_heavy_state(const EtaVector<double>& eta, const MarkedSet& marked) {
    const auto w = compute_weights(eta, marked);
    QuantumState<double> s(eta.size());
    for (Index i = 0; i < eta.size(); ++i) {
        s[i] = eta[i] / std::sqrt(2 * (marked.contains(i) ? w.marked : w.unmarked));
    }
    return s;
}

/// Equal-angle experiments with W_k <= 1e-2: N in {128..1024}, r in {1,2,3},
/// random eta, beta = gamma uniform in (0, 2 pi). Even seeds start from the
/// eta image, odd seeds from a random state.
inline Experiment small_weight_experiment(std::uint64_t seed) {
    std::mt19937_64 gen(seed + 17);
    const Index sizes[] = {128, 256, 512, 1024};
    for (;;) {
        const Index n = sizes[std::uniform_int_distribution<int>(0, 3)(gen)];
        const Index r = std::uniform_int_distribution<Index>(1, 3)(gen);
        auto marked = sample_marked(gen, n, r);
        const double beta = open_angle(gen);
        const std::uint64_t eta_seed = gen();
        auto eta = make_eta_random(eta_seed, n);
        MarkedSet ms(std::move(marked), n);
        if (compute_weights(eta, ms).marked > 1e-2) continue;
        QuantumState<double> state = seed % 2 == 0 ? eta.values : random_state(gen(), n);
        return {AlgorithmParams<double>(beta, beta, std::move(eta), std::move(ms)), std::move(state)};
    }
}

}  // namespace grover::fixtures
