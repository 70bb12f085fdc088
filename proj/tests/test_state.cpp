#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace grover;
using oracle::cd;

TEST_SUITE("state") {

TEST_CASE("hadamard eta is uniform") {
    const auto eta2 = make_eta_hadamard(2);
    REQUIRE(eta2.size() == 4);
    for (Index i = 0; i < 4; ++i) CHECK(eta2[i] == cd(0.5, 0));
    CHECK(std::abs(squared_norm(eta2.values) - 1.0) < 1e-15);
    CHECK(eta2.source == EtaSource::hadamard);

    const auto eta1 = make_eta_hadamard(1);
    CHECK(std::abs(eta1[0] - cd(1 / std::sqrt(2.0), 0)) < 1e-16);
    CHECK(std::abs(eta1[1] - cd(1 / std::sqrt(2.0), 0)) < 1e-16);

    CHECK_THROWS_AS(make_eta_hadamard(0), SizeError);
    CHECK_THROWS_AS(make_eta_hadamard(25), SizeError);
}

TEST_CASE("eta from a unitary is the selected column") {
    const DenseOperator<double> id = DenseOperator<double>::Identity(4, 4);
    const auto e = make_eta_from_unitary(id, 3);
    CHECK(e[0] == cd(0));
    CHECK(e[3] == cd(1));
    CHECK(e.basis_index == 3);

    // Two-qubit Hadamard tensor, column 0.
    DenseOperator<double> h(4, 4);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) h(i, j) = (__builtin_popcountll(static_cast<unsigned long long>(i & j)) % 2 ? -0.5 : 0.5);
    const auto eh = make_eta_from_unitary(h, 0);
    CHECK(oracle::max_abs_diff(eh.values, make_eta_hadamard(2).values) < 1e-15);

    const auto u = random_unitary(42, 8);
    CHECK(unitarity_deviation(u) < 1e-12);
    const auto er = make_eta_from_unitary(u, 0);
    double norm = 0;
    for (Index i = 0; i < 8; ++i) norm += std::norm(er[i]);
    CHECK(std::abs(norm - 1) < 1e-10);

    DenseOperator<double> bad = id;
    bad(0, 0) = 1.1;
    try {
        make_eta_from_unitary(bad, 0);
        FAIL("expected UnitarityError");
    } catch (const UnitarityError& err) {
        CHECK(err.max_deviation() == doctest::Approx(0.21));
    }
    CHECK_THROWS_AS(make_eta_from_unitary(id, 4), IndexError);
    CHECK_THROWS_AS(make_eta_from_unitary(id, -1), IndexError);
}

TEST_CASE("random unitary has a positive real triangular diagonal") {
    // Q^dagger G = R, and the construction moves R's diagonal phases into Q.
    const Index n = 6;
    const auto q = random_unitary(5, n);
    const StateVector<double> entries = gaussian_vector(5, n * n);
    const DenseOperator<double> g = Eigen::Map<const DenseOperator<double>>(entries.data(), n, n);
    const DenseOperator<double> r = q.adjoint() * g;
    for (Index j = 0; j < n; ++j) {
        CHECK(r(j, j).real() > 0);
        CHECK(std::abs(r(j, j).imag()) < 1e-12);
        for (Index i = j + 1; i < n; ++i) CHECK(std::abs(r(i, j)) < 1e-12);
    }
}

TEST_CASE("seeded random eta is deterministic and normalized") {
    const auto a = make_eta_random(7, 4);
    const auto b = make_eta_random(7, 4);
    const auto c = make_eta_random(8, 4);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(std::abs(squared_norm(a.values) - 1) < 1e-12);
    CHECK(a.seed == 7u);
    CHECK_THROWS_AS(make_eta_random(7, 1), SizeError);
}

TEST_CASE("weights") {
    const auto u = make_eta_hadamard(2);
    const auto w = compute_weights(u, MarkedSet({0}, 4));
    CHECK(w.marked == doctest::Approx(0.25));
    CHECK(w.unmarked == doctest::Approx(0.75));

    EtaVector<double> basis;
    basis.values = StateVector<double>::Zero(4);
    basis.values[3] = 1;
    CHECK(compute_weights(basis, MarkedSet({3}, 4)).marked == 1.0);

    const auto r = make_eta_random(42, 8);
    const auto wr = compute_weights(r, MarkedSet({1, 0}, 8));
    const double direct = std::norm(r[0]) + std::norm(r[1]);
    CHECK(std::abs(wr.marked - direct) < 1e-15);
    CHECK(std::abs(wr.marked + wr.unmarked - 1) < 1e-12);
}

TEST_CASE("marked set validation") {
    const MarkedSet m({3, 1, 3}, 8);
    CHECK(m.size() == 2);
    CHECK(m.indices()[0] == 1);
    CHECK(m.contains(3));
    CHECK_FALSE(m.contains(2));
    CHECK_THROWS_AS(MarkedSet({4}, 4), IndexError);
    CHECK_THROWS_AS(MarkedSet({}, 4), SizeError);
    CHECK(MarkedSet({0, 1, 2}, 4).exceeds_half());
    CHECK_FALSE(MarkedSet({0, 1}, 4).exceeds_half());
}

TEST_CASE("moments of simple distributions") {
    const auto eta = make_eta_hadamard(2);
    const MarkedSet m({0}, 4);
    const auto s = compute_moments(eta.values, eta, m);
    CHECK(std::abs(s.kbar0 - cd(1)) < 1e-15);
    CHECK(std::abs(s.lbar0 - cd(1)) < 1e-15);
    CHECK(s.sigma_k2 == 0);
    CHECK(s.sigma_l2 < 1e-30);
    CHECK(s.frozen_marked_prob == 0);

    // amps = eta for a generic eta without zeros.
    const auto r = make_eta_random(11, 16);
    const auto sr = compute_moments(r.values, r, MarkedSet({2, 5}, 16));
    CHECK(std::abs(sr.kbar0 - cd(1)) < 1e-14);
    CHECK(std::abs(sr.lbar0 - cd(1)) < 1e-14);
    CHECK(sr.sigma_k2 < 1e-28);
    CHECK(sr.sigma_l2 < 1e-28);
}

TEST_CASE("moments agree with the textbook summation") {
    const auto eta = make_eta_random(42, 16);
    const auto state = random_state(43, 16);
    const std::vector<Index> marked{1, 7, 12};
    const auto s = compute_moments(state, eta, MarkedSet(marked, 16));
    const auto o = oracle::moments(state, eta.values, marked);
    CHECK(std::abs(s.W_k - o.W_k) < 1e-15);
    CHECK(std::abs(s.kbar0 - o.kbar) < 1e-12 * std::abs(o.kbar) + 1e-14);
    CHECK(std::abs(s.lbar0 - o.lbar) < 1e-12 * std::abs(o.lbar) + 1e-14);
    CHECK(std::abs(s.sigma_k2 - o.sigma_k2) < 1e-12 * o.sigma_k2 + 1e-14);
    CHECK(std::abs(s.sigma_l2 - o.sigma_l2) < 1e-12 * o.sigma_l2 + 1e-14);
}

TEST_CASE("frozen states are set aside") {
    // eta = (1/sqrt2, 0, 1/sqrt2, 0); indices 1 and 3 are frozen.
    EtaVector<double> eta;
    eta.values = StateVector<double>::Zero(4);
    eta.values[0] = eta.values[2] = 1 / std::sqrt(2.0);
    QuantumState<double> st(4);
    st << cd(0.5), cd(0, 0.5), cd(0.5), cd(-0.5);
    const auto m = compute_moments(st, eta, MarkedSet({0, 1}, 4));
    CHECK(m.frozen_marked_prob == doctest::Approx(0.25));
    CHECK(m.frozen_unmarked_prob == doctest::Approx(0.25));
    CHECK(std::abs(m.kbar0 - cd(1 / std::sqrt(2.0))) < 1e-15);

    // Every marked state frozen: W_k = 0 and kbar undefined.
    const auto none = compute_moments(st, eta, MarkedSet({1}, 4));
    CHECK(none.W_k == 0);
    CHECK_FALSE(none.kbar_defined);
    CHECK_THROWS_AS(AnalyticSolution<double>(AlgorithmParams<double>(1.0, 1.0, eta, MarkedSet({1}, 4)), st), WeightError);
}

TEST_CASE("state validation") {
    QuantumState<double> s = QuantumState<double>::Zero(4);
    s[0] = 1;
    CHECK_NOTHROW(validate_state(s));
    s[1] = 0.1;
    CHECK_THROWS_AS(validate_state(s), NormError);
    s[1] = std::nan("");
    CHECK_THROWS_AS(validate_state(s), NormError);
    CHECK_THROWS_AS(validate_state(QuantumState<double>(QuantumState<double>::Ones(1))), SizeError);
}

}  // TEST_SUITE
