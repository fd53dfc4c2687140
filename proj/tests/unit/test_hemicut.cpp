#include <gtest/gtest.h>

#include <numeric>

#include "cutmap/benchmarks.hpp"
#include "cutmap/hemicut.hpp"

using namespace cutmap;

namespace {

int count_kind(const InteractionGraph &g, EdgeKind k) {
    int n = 0;
    for (const auto &e : g.edges()) n += e.kind == k;
    return n;
}

std::vector<bool> cut_only(const InteractionGraph &g, int edge) {
    std::vector<bool> s(g.edges().size(), false);
    s[edge] = true;
    return s;
}

int find_edge(const InteractionGraph &g, EdgeKind k, int qubit, int seq) {
    for (const auto &e : g.edges())
        if (e.kind == k && e.qubit == qubit && e.gate_seq == seq) return e.id;
    return -1;
}

}  // namespace

TEST(InteractionGraph, GhzShape) {
    auto g = build_graph(bench::ghz(4));
    EXPECT_EQ(g.nodes().size(), 6u);
    EXPECT_EQ(count_kind(g, EdgeKind::Gate), 3);
    EXPECT_EQ(count_kind(g, EdgeKind::Wire), 2);
}

TEST(InteractionGraph, QftShape) {
    auto g = build_graph(bench::qft(4));
    EXPECT_EQ(g.nodes().size(), 12u);
    EXPECT_EQ(count_kind(g, EdgeKind::Gate), 6);
    EXPECT_EQ(count_kind(g, EdgeKind::Wire), 8);
}

TEST(InteractionGraph, SingleGateAndNothingToCut) {
    Circuit c(2);
    c.add(GateKind::H, {0});
    c.add(GateKind::CX, {0, 1});
    auto g = build_graph(c);
    EXPECT_EQ(g.nodes().size(), 2u);
    EXPECT_EQ(g.edges().size(), 1u);
    Circuit lone(1);
    lone.add(GateKind::H, {0});
    EXPECT_THROW(build_graph(lone), NothingToCut);
}

TEST(InteractionGraph, CanonicalOrder) {
    auto g = build_graph(bench::ghz(4));
    // gate seqs: H=0, CX(0,1)=1, CX(1,2)=2, CX(2,3)=3
    ASSERT_EQ(g.edges().size(), 5u);
    EXPECT_EQ(g.edges()[0].kind, EdgeKind::Gate);
    EXPECT_EQ(g.edges()[0].gate_seq, 1);
    EXPECT_EQ(g.edges()[1].kind, EdgeKind::Wire);
    EXPECT_EQ(g.edges()[1].qubit, 1);
    EXPECT_EQ(g.edges()[2].kind, EdgeKind::Gate);
    EXPECT_EQ(g.edges()[2].gate_seq, 2);
    EXPECT_EQ(g.edges()[3].kind, EdgeKind::Wire);
    EXPECT_EQ(g.edges()[3].qubit, 2);
    for (std::size_t i = 0; i < g.edges().size(); ++i) EXPECT_EQ(g.edges()[i].id, static_cast<int>(i));
    auto again = build_graph(bench::ghz(4));
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        EXPECT_EQ(g.edges()[i].a, again.edges()[i].a);
        EXPECT_EQ(g.edges()[i].b, again.edges()[i].b);
    }
}

TEST(InteractionGraph, ApplyCutsOnGhz) {
    auto g = build_graph(bench::ghz(4));
    auto none = apply_cuts(g, std::vector<bool>(g.edges().size(), false));
    ASSERT_TRUE(none);
    EXPECT_EQ(*std::max_element(none->begin(), none->end()), 0);

    auto wire = apply_cuts(g, cut_only(g, find_edge(g, EdgeKind::Wire, 1, 1)));
    ASSERT_TRUE(wire);
    EXPECT_EQ(*std::max_element(wire->begin(), wire->end()), 1);
    EXPECT_EQ(std::count(wire->begin(), wire->end(), 0), 2);  // q0, q1 (first occurrence)
    EXPECT_EQ(component_qubits(g, cut_only(g, find_edge(g, EdgeKind::Wire, 1, 1))), (std::vector<int>{2, 3}));

    auto gate = apply_cuts(g, cut_only(g, find_edge(g, EdgeKind::Gate, 1, 2)));
    ASSERT_TRUE(gate);
    EXPECT_EQ(*std::max_element(gate->begin(), gate->end()), 1);
    EXPECT_EQ(component_qubits(g, cut_only(g, find_edge(g, EdgeKind::Gate, 1, 2))), (std::vector<int>{2, 2}));

    auto all = apply_cuts(g, std::vector<bool>(g.edges().size(), true));
    EXPECT_EQ(*std::max_element(all->begin(), all->end()), 5);
}

TEST(InteractionGraph, ContractMakesEdgesUncuttable) {
    auto g = build_graph(bench::ghz(4));
    const int before = g.num_cuttable();
    auto one = contract(g, {0});
    EXPECT_EQ(one.num_cuttable(), before);
    auto pair = contract(g, {0, 1});
    EXPECT_EQ(pair.num_cuttable(), before - 1);
    EXPECT_FALSE(apply_cuts(pair, cut_only(pair, 0)));
    std::vector<int> every(g.nodes().size());
    std::iota(every.begin(), every.end(), 0);
    EXPECT_EQ(contract(g, every).num_cuttable(), 0);
    EXPECT_THROW(contract(g, {0, 5}), std::invalid_argument);
    EXPECT_THROW(contract(pair, {1, 2}), std::invalid_argument);
    EXPECT_NE(to_dot(pair).find("style=dashed"), std::string::npos);
}

TEST(CostTuple, OrderItems) {
    CostTuple wire{0, 1, 0, 1, 0, 5}, gate{0, 0, 1, 0, 1, 5};
    EXPECT_LT(compare(wire, gate, CostOrder::PostprocFirst), 0);  // 4 < 6
    EXPECT_GT(compare(wire, gate, CostOrder::SamplingFirst), 0);  // 16 > 9
    CostTuple deeper = wire;
    deeper.depth = 6;
    EXPECT_LT(compare(deeper, wire, CostOrder::PostprocFirst), 0);
    CostTuple remote = gate;
    remote.remote = 1;
    EXPECT_GT(compare(remote, wire, CostOrder::PostprocFirst), 0);
    EXPECT_EQ(wire.postproc(), 4);
    EXPECT_EQ(gate.sampling(), 9);
}

TEST(Search, GhzFourTakesOneCut) {
    auto g = build_graph(bench::ghz(4));
    auto t = preset_topology("manila-x20");
    auto wire = search_min_cost(g, t);
    EXPECT_EQ(wire.cuts.k1() + wire.cuts.k2(), 1);
    EXPECT_EQ(wire.cuts.k1(), 1);
    SearchOptions lit;
    lit.order = CostOrder::SamplingFirst;
    auto gate = search_min_cost(g, t, lit);
    EXPECT_EQ(gate.cuts.k2(), 1);
    EXPECT_EQ(gate.cuts.k1(), 0);
    for (int q : component_qubits(g, gate.s)) EXPECT_LE(q, 3);
}

TEST(Search, QftFourSplitsIntoFittingParts) {
    auto g = build_graph(bench::qft(4));
    auto t = preset_topology("manila-x20");
    auto sol = search_min_cost(g, t);
    EXPECT_LE(sol.cuts.k1() + sol.cuts.k2(), 3);
    EXPECT_EQ(sol.cost.remote, 0);
    for (int q : component_qubits(g, sol.s)) EXPECT_LE(q, 3);
    EXPECT_FALSE(sol.budget_exhausted);
}

TEST(Search, FittingCircuitNeedsNoCut) {
    auto g = build_graph(bench::ghz(3));
    auto sol = search_min_cost(g, preset_topology("manila-x20"));
    EXPECT_TRUE(sol.cuts.empty());
}

TEST(Search, DeterministicAndBudgeted) {
    auto g = build_graph(bench::ripple_carry_adder(6));
    auto t = preset_topology("manila-x20");
    auto a = search_min_cost(g, t), b = search_min_cost(g, t);
    EXPECT_EQ(a.s, b.s);
    SearchOptions tiny;
    tiny.budget = 1;
    auto c = search_min_cost(g, t, tiny);
    EXPECT_TRUE(c.budget_exhausted);
    for (int q : component_qubits(g, c.s)) EXPECT_LE(q, 3);
    tiny.seed_with_dive = false;
    EXPECT_THROW(search_min_cost(g, t, tiny), NoFeasibleCut);
}

TEST(Remote, QftCxWalkthrough) {
    auto g = build_graph(bench::qft(4, true));
    auto t = preset_topology("manila-x20");
    EXPECT_EQ(estimate_remote_gates(g, std::vector<bool>(g.edges().size(), false), t), 6);
    SearchOptions lit;
    lit.order = CostOrder::SamplingFirst;
    auto sol = search_min_cost(g, t, lit);
    EXPECT_EQ(sol.cuts.k1(), 2);
    EXPECT_EQ(sol.cuts.k2(), 2);
    auto f = filter_critical(g, sol.cuts, t);
    std::vector<int> removed;
    for (const auto &m : f.marginals) removed.push_back(m.removed);
    std::sort(removed.rbegin(), removed.rend());
    EXPECT_EQ(removed, (std::vector<int>{2, 2, 1, 1}));
    EXPECT_DOUBLE_EQ(f.average, 1.5);
    EXPECT_EQ(f.kept.k1() + f.kept.k2(), 2);
    for (const auto &m : f.marginals) EXPECT_EQ(m.critical, m.removed == 2);
}

TEST(Remote, FittingComponentCostsNothing) {
    auto g = build_graph(bench::ghz(3));
    EXPECT_EQ(estimate_remote_gates(g, std::vector<bool>(g.edges().size(), false), preset_topology("manila-x20")), 0);
}

TEST(Filter, SingleAndEmpty) {
    auto g = build_graph(bench::ghz(4));
    auto t = preset_topology("manila-x20");
    CutSet one;
    one.wire_cuts = {find_edge(g, EdgeKind::Wire, 1, 1)};
    auto f = filter_critical(g, one, t);
    EXPECT_EQ(f.kept.k1(), 1);
    EXPECT_TRUE(filter_critical(g, CutSet{}, t).kept.empty());
}

TEST(Filter, OutputIsSubsetAndNonEmpty) {
    auto t = preset_topology("manila-x20");
    for (int n : {4, 5, 6}) {
        auto g = build_graph(bench::qft(n));
        auto sol = search_min_cost(g, t);
        auto f = filter_critical(g, sol.cuts, t);
        EXPECT_GE(f.kept.k1() + f.kept.k2(), 1);
        for (int e : f.kept.wire_cuts)
            EXPECT_NE(std::find(sol.cuts.wire_cuts.begin(), sol.cuts.wire_cuts.end(), e), sol.cuts.wire_cuts.end());
        for (int e : f.kept.gate_cuts)
            EXPECT_NE(std::find(sol.cuts.gate_cuts.begin(), sol.cuts.gate_cuts.end(), e), sol.cuts.gate_cuts.end());
    }
}

TEST(Locate, WireCutCoordinates) {
    auto g = build_graph(bench::ghz(4));
    CutSet cs;
    cs.wire_cuts = {find_edge(g, EdgeKind::Wire, 2, 2)};
    cs.gate_cuts = {find_edge(g, EdgeKind::Gate, 0, 1)};
    auto loc = locate(g, cs);
    ASSERT_EQ(loc.wires.size(), 1u);
    EXPECT_EQ(loc.wires[0], (WireCutLocation{2, 0}));
    EXPECT_EQ(loc.gates, (std::vector<int>{1}));
}
