#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace grover;
using oracle::cd;
using oracle::pi;

namespace {

AlgorithmParams<double> uniform_params(int qubits, std::vector<Index> marked, double beta, double gamma) {
    const Index n = Index{1} << qubits;
    return {beta, gamma, make_eta_hadamard(qubits), MarkedSet(std::move(marked), n)};
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("oracle rotation") {
    QuantumState<double> s = QuantumState<double>::Constant(4, 0.5);
    CHECK(apply_oracle_rotation(s, MarkedSet({0}, 4), 0.0) == s);

    const auto r = apply_oracle_rotation(s, MarkedSet({0}, 4), pi);
    CHECK(std::abs(r[0] - cd(-0.5)) < 1e-16);
    for (Index i = 1; i < 4; ++i) CHECK(r[i] == cd(0.5));

    QuantumState<double> b = QuantumState<double>::Zero(4);
    b[1] = 1;
    const auto rb = apply_oracle_rotation(b, MarkedSet({1}, 4), pi / 2);
    CHECK(std::abs(rb[1] - cd(0, 1)) < 1e-16);
    CHECK(rb[0] == cd(0));
}

TEST_CASE("diffusion") {
    const auto eta = make_eta_hadamard(2);
    QuantumState<double> s = QuantumState<double>::Zero(4);
    s[0] = 1;

    const auto zero = apply_diffusion(s, eta, 0.0);
    CHECK(oracle::max_abs_diff(zero, -s) == 0);

    const auto inv = apply_diffusion(s, eta, pi);
    CHECK(std::abs(inv[0] - cd(-0.5)) < 1e-15);
    for (Index i = 1; i < 4; ++i) CHECK(std::abs(inv[i] - cd(0.5)) < 1e-15);

    const auto er = make_eta_random(42, 8);
    const auto sr = random_state(7, 8);
    const auto fast = apply_diffusion(sr, er, pi / 3);
    const oracle::Vec dense = oracle::dense_diffusion(er.values, pi / 3) * sr;
    CHECK(oracle::max_abs_diff(fast, dense) < 1e-12);
    CHECK(oracle::max_abs_diff(apply_diffusion_dense(sr, er, pi / 3), dense) < 1e-12);
    CHECK(std::abs(squared_norm(fast) - 1) < 1e-12);
}

TEST_CASE("one step of the original algorithm on four states finds the target") {
    const auto p = uniform_params(2, {2}, pi, pi);
    const auto s1 = grover_step(p.eta.values, p);
    CHECK(std::abs(std::abs(s1[2]) - 1) < 1e-15);
    for (Index i : {0, 1, 3}) CHECK(std::abs(s1[i]) < 1e-15);
    const oracle::Vec dense = oracle::dense_iteration(p.eta.values, {2}, pi, pi) * p.eta.values;
    CHECK(oracle::max_abs_diff(s1, dense) < 1e-15);
}

TEST_CASE("beta = 0 leaves every probability unchanged") {
    const auto eta = make_eta_random(3, 8);
    const AlgorithmParams<double> p(0.0, 1.234, eta, MarkedSet({1, 4}, 8));
    const auto s0 = random_state(4, 8);
    const auto s1 = grover_step(s0, p);
    for (Index i = 0; i < 8; ++i) CHECK(std::abs(std::norm(s1[i]) - std::norm(s0[i])) < 1e-15);
}

TEST_CASE("inverse step undoes a step") {
    const AlgorithmParams<double> p(2.1, 0.7, make_eta_random(9, 16), MarkedSet({0, 3, 9}, 16));
    const auto s0 = random_state(10, 16);
    CHECK(oracle::max_abs_diff(grover_step_inverse(grover_step(s0, p), p), s0) < 1e-12);
}

TEST_CASE("run stores t_end + 1 states") {
    const auto p = uniform_params(2, {0}, pi, pi);
    const auto t0 = run(p.eta.values, p, 0);
    CHECK(t0.states.size() == 1);
    CHECK(t0[0] == p.eta.values);

    const auto t3 = run(p.eta.values, p, 3);
    const double expect[] = {0.25, 1.0, 0.25, 0.25};
    for (int t = 0; t <= 3; ++t) CHECK(std::abs(marked_probability(t3[t], p.marked) - expect[t]) < 1e-12);

    CHECK_THROWS_AS(run(p.eta.values, p, -1), LimitError);
    CHECK_THROWS_AS(run(p.eta.values, p, kMaxSteps + 1), LimitError);
}

TEST_CASE("long runs keep unit norm") {
    const AlgorithmParams<double> p(pi / 3, pi / 3, make_eta_random(42, 16), MarkedSet({2, 11}, 16));
    double drift = 0;
    run_streaming(random_state(42, 16), p, 10000, [&](std::int64_t t, const QuantumState<double>& s) {
        if (t == 10000) drift = std::abs(std::sqrt(squared_norm(s)) - 1);
    });
    CHECK(drift < 1e-10);
}

TEST_CASE("marked probability") {
    const auto eta = make_eta_hadamard(2);
    CHECK(marked_probability(eta.values, MarkedSet({0}, 4)) == doctest::Approx(0.25));
    QuantumState<double> b = QuantumState<double>::Zero(4);
    b[3] = cd(0, 1);
    CHECK(marked_probability(b, MarkedSet({3}, 4)) == 1.0);

    const auto s = random_state(99, 32);
    const MarkedSet m({1, 8, 30}, 32);
    const double direct = std::norm(s[30]) + std::norm(s[8]) + std::norm(s[1]);
    CHECK(std::abs(marked_probability(s, m) - direct) < 1e-15);
}

TEST_CASE("frozen states keep their modulus") {
    const Index n = 8;
    StateVector<double> v = make_eta_random(21, n).values;
    v[3] = 0;
    v[6] = 0;
    const AlgorithmParams<double> p(1.3, 2.2, make_eta_from_vector(normalized(v)), MarkedSet({3, 5}, n));
    const auto s0 = random_state(22, n);
    run_streaming(s0, p, 200, [&](std::int64_t, const QuantumState<double>& s) {
        CHECK(std::abs(std::abs(s[3]) - std::abs(s0[3])) < 1e-13);
        CHECK(std::abs(std::abs(s[6]) - std::abs(s0[6])) < 1e-13);
    });
}

TEST_CASE("extended precision agrees with double") {
    const Index n = 32;
    const AlgorithmParams<double> pd(2.0, 2.0, make_eta_random(5, n), MarkedSet({4, 17}, n));
    const AlgorithmParams<long double> pl(2.0L, 2.0L, make_eta_random<long double>(5, n), MarkedSet({4, 17}, n));
    auto sd = random_state(6, n);
    auto sl = random_state<long double>(6, n);
    for (int t = 0; t < 1000; ++t) {
        step_in_place(sd, pd);
        step_in_place(sl, pl);
    }
    double worst = 0;
    for (Index i = 0; i < n; ++i) {
        const std::complex<long double> diff = sl[i] - std::complex<long double>(sd[i].real(), sd[i].imag());
        worst = std::max(worst, static_cast<double>(std::abs(diff)));
    }
    CHECK(worst < 1e-12);
}

}  // TEST_SUITE
