#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "../support/density.hpp"
#include "cutmap/overheads.hpp"
#include "cutmap/qpd.hpp"

using namespace cutmap;

TEST(WireCut, ReconstructsRandomStates) {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 20; ++t) {
        oracle::Mat rho = oracle::random_density(2, rng);
        EXPECT_LT(oracle::max_abs(oracle::apply_wire_cut(rho) - rho), 1e-12);
    }
}

TEST(WireCut, BasisStateExact) {
    oracle::Mat rho = oracle::m2(1, 0, 0, 0);
    EXPECT_EQ(oracle::max_abs(oracle::apply_wire_cut(rho) - rho), 0.0);
}

TEST(WireCut, TermStructure) {
    const auto &terms = wire_cut_terms();
    EXPECT_EQ(terms.size(), 10u);
    int zero = 0;
    for (int b = 0; b < 4; ++b)
        for (int p = 0; p < 4; ++p)
            if (wire_cut_coefficient(static_cast<MeasBasis>(b), static_cast<PrepState>(p)) == 0.0) ++zero;
    EXPECT_EQ(zero, 6);
    // Trace preservation: only the I terms survive Tr(rho I) = 1 with weights summing to 1.
    double s = 0;
    for (const auto &t : terms)
        if (t.basis == MeasBasis::I) s += t.coeff;
    EXPECT_DOUBLE_EQ(s, 1.0);
    // Three executed measurement settings: I and Z share a circuit.
    std::set<std::string> circuits;
    for (int b = 0; b < 4; ++b) {
        Circuit c(1);
        append_measurement(c, 0, static_cast<MeasBasis>(b));
        std::string key;
        for (const auto &g : c.gates()) key += std::string(gate_name(g.kind)) + ";";
        circuits.insert(key);
    }
    EXPECT_EQ(circuits.size(), 3u);
}

TEST(GateCut, SixChannels) {
    auto ch = gate_cut_channels(0.3);
    ASSERT_EQ(ch.size(), 6u);
    auto zero = gate_cut_channels(0.0);
    int nonzero = 0;
    for (const auto &c : zero)
        if (c.coeff != 0.0) {
            ++nonzero;
            EXPECT_EQ(c.ops[0], LocalOp::Identity);
            EXPECT_DOUBLE_EQ(c.coeff, 1.0);
        }
    EXPECT_EQ(nonzero, 1);
}

class GateCutOracle : public ::testing::TestWithParam<Gate> {};

TEST_P(GateCutOracle, ChannelSumEqualsGate) {
    const Gate g = GetParam();
    GateCutForm f = gate_cut_form(g);
    oracle::Mat u = oracle::gate2(g.kind, g.params);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        oracle::Mat rho = oracle::random_density(4, rng);
        oracle::Mat want = u * rho * u.adjoint();
        EXPECT_LT(oracle::max_abs(oracle::apply_gate_cut(f, rho) - want), 1e-9);
    }
}

INSTANTIATE_TEST_SUITE_P(Kinds, GateCutOracle,
                         ::testing::Values(Gate{GateKind::CZ, {}, {0, 1}, 0}, Gate{GateKind::CX, {}, {0, 1}, 0},
                                           Gate{GateKind::CP, {0.7}, {0, 1}, 0},
                                           Gate{GateKind::CP, {-2.1}, {0, 1}, 0},
                                           Gate{GateKind::RZZ, {1.3}, {0, 1}, 0}),
                         [](const auto &info) {
                             return std::string(gate_name(info.param.kind)) + "_" + std::to_string(info.index);
                         });

TEST(GateCut, RejectsSwap) {
    EXPECT_THROW(gate_cut_form(Gate{GateKind::SWAP, {}, {0, 1}, 0}), std::invalid_argument);
}

TEST(Overheads, Formulas) {
    EXPECT_EQ(postproc_overhead(2, 2), 576);
    EXPECT_EQ(sampling_overhead(2, 2), 20736);
    EXPECT_EQ(postproc_overhead(0, 0), 1);
    EXPECT_EQ(sampling_overhead(0, 0), 1);
    for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b) {
            BigInt p = 1, s = 1;
            for (int i = 0; i < a; ++i) p *= 4, s *= 16;
            for (int i = 0; i < b; ++i) p *= 6, s *= 9;
            EXPECT_EQ(postproc_overhead(a, b), p);
            EXPECT_EQ(sampling_overhead(a, b), s);
        }
    // 6^149 is about 8.9e115; 6^75 is about 2.3e58.
    EXPECT_NEAR(log10_big(postproc_overhead(0, 149)), 149 * std::log10(6.0), 1e-9);
    EXPECT_EQ(format_big(postproc_overhead(0, 75)).substr(0, 5), "2.298");
    EXPECT_EQ(format_big(BigInt(576)), "576");
}

TEST(Overheads, VariantCount) {
    EXPECT_EQ(variant_count(1, 1), 12u);
    EXPECT_EQ(variant_count(0, 1), 3u);
    EXPECT_EQ(variant_count(0, 0), 1u);
}
