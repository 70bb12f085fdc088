#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace grover {

using Index = Eigen::Index;

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using StateVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using DenseOperator = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Complex<Scalar>, 2, 1>;

/// Amplitudes of an N-state register. Unit norm is checked by validate_state();
/// evolved states are never renormalized, so their norm drift stays observable.
template <typename Scalar = double>
using QuantumState = StateVector<Scalar>;

// Errors ---------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class NormError : public Error {
public:
    using Error::Error;
};

class UnitarityError : public Error {
public:
    UnitarityError(const std::string& what, double max_deviation)
        : Error(what), max_deviation_(max_deviation) {}
    double max_deviation() const noexcept { return max_deviation_; }

private:
    double max_deviation_;
};

class LimitError : public Error {
public:
    using Error::Error;
};

/// Closed-form solution unavailable: the two eigenvalues of the averages'
/// evolution matrix coincide, or the eigenvectors cannot be written with a
/// unit first component. The matrix-power path stays valid.
class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

class RegimeError : public Error {
public:
    using Error::Error;
};

class WeightError : public Error {
public:
    using Error::Error;
};

// Marked set -----------------------------------------------------------------

/// Sorted, duplicate-free set of marked basis indices in [0, N).
class MarkedSet {
public:
    MarkedSet(std::vector<Index> indices, Index dimension) : dimension_(dimension) {
        if (dimension < 2) throw SizeError("marked set: dimension must be at least 2");
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
        if (indices.empty()) throw SizeError("marked set: at least one marked index is required");
        if (indices.front() < 0 || indices.back() >= dimension) {
            throw IndexError("marked set: index out of range [0, " + std::to_string(dimension) + ")");
        }
        mask_.assign(static_cast<std::size_t>(dimension), 0);
        for (Index i : indices) mask_[static_cast<std::size_t>(i)] = 1;
        indices_ = std::move(indices);
    }

    /// Marks {0, ..., r-1}.
    static MarkedSet first(Index r, Index dimension) {
        std::vector<Index> idx;
        for (Index i = 0; i < r; ++i) idx.push_back(i);
        return MarkedSet(std::move(idx), dimension);
    }

    std::span<const Index> indices() const noexcept { return indices_; }
    Index size() const noexcept { return static_cast<Index>(indices_.size()); }
    Index dimension() const noexcept { return dimension_; }
    bool contains(Index i) const { return mask_[static_cast<std::size_t>(i)] != 0; }

    // r <= N/2 is assumed by the analysis but not required for evaluation.
    bool exceeds_half() const noexcept { return 2 * size() > dimension_; }

    friend bool operator==(const MarkedSet& a, const MarkedSet& b) {
        return a.dimension_ == b.dimension_ && a.indices_ == b.indices_;
    }

private:
    std::vector<Index> indices_;
    std::vector<char> mask_;
    Index dimension_;
};

// Diffusion vector -----------------------------------------------------------

enum class EtaSource { hadamard, explicit_unitary, explicit_vector, seeded_random };

inline const char* to_string(EtaSource s) {
    switch (s) {
        case EtaSource::hadamard: return "hadamard";
        case EtaSource::explicit_unitary: return "unitary";
        case EtaSource::explicit_vector: return "vector";
        case EtaSource::seeded_random: return "random";
    }
    return "?";
}

/// |eta> = U|s>, the only way the unitary enters the dynamics.
template <typename Scalar = double>
struct EtaVector {
    StateVector<Scalar> values;
    EtaSource source = EtaSource::explicit_vector;
    std::optional<Index> basis_index;     // s, for explicit_unitary
    std::optional<std::uint64_t> seed;    // for seeded_random

    Index size() const noexcept { return values.size(); }
    const Complex<Scalar>& operator[](Index i) const { return values[i]; }
};

/// Everything that defines one experiment apart from the initial state.
template <typename Scalar = double>
struct AlgorithmParams {
    Scalar beta{};
    Scalar gamma{};
    EtaVector<Scalar> eta;
    MarkedSet marked;

    AlgorithmParams(Scalar beta_, Scalar gamma_, EtaVector<Scalar> eta_, MarkedSet marked_)
        : beta(beta_), gamma(gamma_), eta(std::move(eta_)), marked(std::move(marked_)) {
        using std::isfinite;
        if (!isfinite(beta) || !isfinite(gamma)) throw Error("params: angles must be finite");
        if (eta.size() != marked.dimension()) {
            throw SizeError("params: eta length " + std::to_string(eta.size()) +
                            " does not match marked-set dimension " + std::to_string(marked.dimension()));
        }
    }

    Index dimension() const noexcept { return eta.size(); }
};

template <typename Scalar = double>
struct Weights {
    Scalar marked{};    // W_k
    Scalar unmarked{};  // W_l
};

/// First and second weighted moments of an initial distribution in the
/// rescaled variables k'_i = k_i / eta_i, l'_i = l_i / eta_i.
template <typename Scalar = double>
struct MomentSummary {
    Scalar W_k{};
    Scalar W_l{};
    Complex<Scalar> kbar0{};
    Complex<Scalar> lbar0{};
    Scalar sigma_k2{};
    Scalar sigma_l2{};
    Scalar frozen_marked_prob{};
    Scalar frozen_unmarked_prob{};
    bool kbar_defined = true;  // false when every marked state is frozen
    bool lbar_defined = true;
};

}  // namespace grover
