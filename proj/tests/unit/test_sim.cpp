#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../support/density.hpp"
#include "cutmap/benchmarks.hpp"
#include "cutmap/sim.hpp"

using namespace cutmap;

namespace {

// Dense unitary of a circuit built from the oracle's own gate matrices.
oracle::Mat circuit_unitary(const Circuit &c) {
    const int n = c.num_qubits();
    const int d = 1 << n;
    oracle::Mat u = oracle::eye(d);
    for (const auto &g : c.gates()) {
        oracle::Mat step = oracle::Mat::Zero(d, d);
        for (int col = 0; col < d; ++col) {
            for (int row = 0; row < d; ++row) {
                bool same_elsewhere = true;
                for (int q = 0; q < n; ++q)
                    if (!g.acts_on(q) && ((row >> q & 1) != (col >> q & 1))) same_elsewhere = false;
                if (!same_elsewhere) continue;
                if (g.two_qubit()) {
                    oracle::Mat m = oracle::gate2(g.kind, g.params);
                    int a = g.qubits[0], b = g.qubits[1];
                    int r = (row >> a & 1) * 2 + (row >> b & 1), cc = (col >> a & 1) * 2 + (col >> b & 1);
                    step(row, col) = m(r, cc);
                } else {
                    oracle::Mat m = oracle::gate1(g.kind, g.params);
                    int q = g.qubits[0];
                    step(row, col) = m(row >> q & 1, col >> q & 1);
                }
            }
        }
        u = step * u;
    }
    return u;
}

Circuit random_circuit(int n, int len, std::mt19937_64 &rng) {
    const GateKind kinds[] = {GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,   GateKind::S,
                              GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::RX, GateKind::RY,
                              GateKind::RZ, GateKind::RZZ, GateKind::CX, GateKind::CZ, GateKind::CP,
                              GateKind::SWAP};
    std::uniform_real_distribution<double> ang(-3, 3);
    Circuit c(n);
    for (int i = 0; i < len; ++i) {
        GateKind k = kinds[rng() % std::size(kinds)];
        std::vector<double> p;
        if (param_count(k)) p.push_back(ang(rng));
        int a = rng() % n;
        if (is_two_qubit(k)) c.add(k, {a, static_cast<int>((a + 1 + rng() % (n - 1)) % n)}, p);
        else c.add(k, {a}, p);
    }
    return c;
}

}  // namespace

TEST(Sim, GhzState) {
    auto sv = simulate(bench::ghz(4));
    const double r = 1 / std::sqrt(2.0);
    for (std::size_t i = 0; i < 16; ++i) {
        double expect = (i == 0 || i == 15) ? r : 0.0;
        EXPECT_NEAR(std::abs(sv.amplitudes()[i] - cplx(expect, 0)), 0.0, 1e-12);
    }
    EXPECT_NEAR(expectation(sv, "ZZZZ"), 1.0, 1e-12);
    EXPECT_NEAR(expectation(sv, "ZIII"), 0.0, 1e-12);
    EXPECT_NEAR(expectation(sv, "IIII"), 1.0, 1e-12);
    EXPECT_NEAR(expectation(sv, "XXXX"), 1.0, 1e-12);
}

TEST(Sim, EmptyCircuit) {
    auto sv = simulate(Circuit(2));
    EXPECT_EQ(sv.amplitudes()[0], cplx(1, 0));
    EXPECT_NEAR(sv.norm_squared(), 1.0, 1e-15);
}

TEST(Sim, QftMatchesDft) {
    // QFT without final reversal maps |0...0> to the uniform state; check a basis input too.
    Circuit c(4);
    c.add(GateKind::X, {0});
    c.add(GateKind::X, {2});
    Circuit q = bench::qft(4);
    for (const auto &g : q.gates()) c.add(g.kind, g.qubits, g.params);
    auto sv = simulate(c);
    const int x = 0b0101;
    // Without the final reversal the input is read with qubit 0 as the most significant
    // bit while the output amplitude index is the frequency itself.
    auto rev = [](int k) {
        int r = 0;
        for (int b = 0; b < 4; ++b) r |= ((k >> b) & 1) << (3 - b);
        return r;
    };
    const int xin = rev(x);
    for (int k = 0; k < 16; ++k) {
        cplx want = std::polar(0.25, 2 * std::numbers::pi * xin * k / 16.0);
        EXPECT_NEAR(std::abs(sv.amplitudes()[k] - want), 0.0, 1e-12) << k;
    }
}

TEST(Sim, MatchesDenseUnitary) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        Circuit c = random_circuit(3, 25, rng);
        auto sv = simulate(c);
        oracle::Mat u = circuit_unitary(c);
        for (int i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(sv.amplitudes()[i] - u(i, 0)), 0.0, 1e-12);
        EXPECT_NEAR(sv.norm_squared(), 1.0, 1e-12);
    }
}

TEST(Sim, Linearity) {
    std::mt19937_64 rng(9);
    Circuit c = random_circuit(3, 20, rng);
    oracle::Mat u = circuit_unitary(c);
    std::normal_distribution<double> n(0, 1);
    StateVector a(3), b(3), s(3);
    cplx alpha(0.3, -0.2), beta(-0.7, 0.5);
    for (int i = 0; i < 8; ++i) {
        a.amplitudes()[i] = cplx(n(rng), n(rng));
        b.amplitudes()[i] = cplx(n(rng), n(rng));
        s.amplitudes()[i] = alpha * a.amplitudes()[i] + beta * b.amplitudes()[i];
    }
    for (const auto &g : c.gates()) {
        a.apply(g);
        b.apply(g);
        s.apply(g);
    }
    for (int i = 0; i < 8; ++i)
        EXPECT_NEAR(std::abs(s.amplitudes()[i] - (alpha * a.amplitudes()[i] + beta * b.amplitudes()[i])), 0.0, 1e-12);
}

TEST(Sim, PrepareStates) {
    const double want_x[] = {0, 0, 1, 0}, want_y[] = {0, 0, 0, 1}, want_z[] = {1, -1, 0, 0};
    for (int s = 0; s < 4; ++s) {
        Circuit c(1);
        c.add(GateKind::PREPARE, {0}, {static_cast<double>(s)});
        auto sv = simulate(c);
        EXPECT_NEAR(expectation(sv, "X"), want_x[s], 1e-12);
        EXPECT_NEAR(expectation(sv, "Y"), want_y[s], 1e-12);
        EXPECT_NEAR(expectation(sv, "Z"), want_z[s], 1e-12);
    }
}

TEST(BranchEval, ZProjectorOnPlus) {
    Circuit c(1);
    c.add(GateKind::H, {0});
    c.add(GateKind::MEASURE, {0});
    // Probability-weighted branches: p0 <Z>_0 + p1 <Z>_1 = 0.
    EXPECT_NEAR(branch_eval(c, "Z", {false}), 0.0, 1e-12);
    // With the outcome sign folded in the estimator is Z * Z = 1.
    EXPECT_NEAR(branch_eval(c, "Z", {true}), 1.0, 1e-12);
    EXPECT_NEAR(branch_eval(c, "I", {false}), 1.0, 1e-12);
}

TEST(BranchEval, NoProjectorsReducesToExpectation) {
    Circuit c = bench::hardware_efficient_ansatz(4);
    EXPECT_NEAR(branch_eval(c, "ZXYZ", {}), expectation(simulate(c), "ZXYZ"), 1e-12);
}

TEST(BranchEval, MidCircuitMatchesDensityMatrix) {
    // Oracle: rho -> sum_b sign_b P_b rho P_b on qubit 0, then the rest of the circuit.
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; ++t) {
        Circuit pre = random_circuit(2, 10, rng), post = random_circuit(2, 10, rng);
        Circuit c(2);
        for (const auto &g : pre.gates()) c.add(g.kind, g.qubits, g.params);
        c.add(GateKind::MEASURE, {0});
        for (const auto &g : post.gates()) c.add(g.kind, g.qubits, g.params);
        oracle::Mat u1 = circuit_unitary(pre), u2 = circuit_unitary(post);
        oracle::Mat rho = oracle::Mat::Zero(4, 4);
        rho(0, 0) = 1;
        rho = u1 * rho * u1.adjoint();
        // qubit 0 is the least significant bit, i.e. the right tensor factor
        oracle::Mat p0 = oracle::kron(oracle::eye(2), oracle::m2(1, 0, 0, 0));
        oracle::Mat p1 = oracle::kron(oracle::eye(2), oracle::m2(0, 0, 0, 1));
        for (bool sgn : {false, true}) {
            oracle::Mat r = p0 * rho * p0 + (sgn ? -1.0 : 1.0) * (p1 * rho * p1);
            r = u2 * r * u2.adjoint();
            oracle::Mat obs = oracle::kron(oracle::pauli('X'), oracle::pauli('Y'));  // qubit1 X, qubit0 Y
            double want = (r * obs).trace().real();
            EXPECT_NEAR(branch_eval(c, "YX", {sgn}), want, 1e-10);
        }
    }
}

TEST(BranchEval, TerminalMeasurementFolds) {
    Circuit c(2);
    c.add(GateKind::H, {0});
    c.add(GateKind::CX, {0, 1});
    c.add(GateKind::MEASURE, {0});
    EXPECT_NEAR(branch_eval(c, "IZ", {true}), 1.0, 1e-12);
    EXPECT_NEAR(branch_eval(c, "IZ", {false}), 0.0, 1e-12);
}

TEST(BranchEval, DepthCap) {
    Circuit c(1);
    for (int i = 0; i < 10; ++i) {
        c.add(GateKind::H, {0});
        c.add(GateKind::MEASURE, {0});
    }
    c.add(GateKind::H, {0});
    EXPECT_THROW(branch_eval(c, "Z", std::vector<bool>(10, true)), std::runtime_error);
    BranchOptions opt;
    opt.max_branch_depth = 10;
    EXPECT_NO_THROW(branch_eval(c, "Z", std::vector<bool>(10, true), opt));
}

TEST(Sample, Basics) {
    auto zero = sample(StateVector(1), 100, 1);
    EXPECT_EQ(zero.size(), 1u);
    EXPECT_EQ(zero["0"], 100);

    Circuit plus(1);
    plus.add(GateKind::H, {0});
    auto counts = sample(simulate(plus), 100000, 77);
    double p0 = counts["0"] / 100000.0;
    EXPECT_LT(std::abs(p0 - 0.5), 0.01);

    auto g = sample(simulate(bench::ghz(4)), 10000, 3);
    for (const auto &[k, v] : g) EXPECT_TRUE(k == "0000" || k == "1111") << k;
    EXPECT_EQ(sample(simulate(plus), 50, 9), sample(simulate(plus), 50, 9));
}

TEST(Sim, RejectsOversized) {
    EXPECT_THROW(StateVector(5, 4), std::invalid_argument);
    Circuit c(1);
    c.add(GateKind::MEASURE, {0});
    EXPECT_THROW(simulate(c), std::invalid_argument);
}
