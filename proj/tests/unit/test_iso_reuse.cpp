#include <gtest/gtest.h>

#include <set>

#include "cutmap/benchmarks.hpp"
#include "cutmap/hemicut.hpp"
#include "cutmap/iso_reuse.hpp"
#include "cutmap/overheads.hpp"

using namespace cutmap;

namespace {

Circuit two_qubit_block(GateKind kind, int a, int b, int n, double angle = 0.3) {
    Circuit c(n);
    c.add(GateKind::H, {a});
    c.add(kind, {a, b});
    c.add(GateKind::RZ, {b}, {angle});
    c.add(kind, {b, a});
    return c;
}

}  // namespace

TEST(LabelMatch, RelabelingKindsAndTolerance) {
    EXPECT_TRUE(label_match(two_qubit_block(GateKind::CX, 0, 1, 2), two_qubit_block(GateKind::CX, 2, 0, 3)));
    EXPECT_FALSE(label_match(two_qubit_block(GateKind::CX, 0, 1, 2), two_qubit_block(GateKind::CZ, 0, 1, 2)));
    EXPECT_TRUE(label_match(two_qubit_block(GateKind::CX, 0, 1, 2, 0.3),
                            two_qubit_block(GateKind::CX, 0, 1, 2, 0.3000000001)));
    EXPECT_FALSE(label_match(two_qubit_block(GateKind::CX, 0, 1, 2, 0.3), two_qubit_block(GateKind::CX, 0, 1, 2, 0.31)));
    // operand direction matters for CX
    Circuit ab(2), ba(2);
    ab.add(GateKind::CX, {0, 1});
    ab.add(GateKind::H, {0});
    ba.add(GateKind::CX, {1, 0});
    ba.add(GateKind::H, {0});
    EXPECT_FALSE(label_match(ab, ba));
    Circuit x(1), y(1);
    x.add(GateKind::RX, {0}, {1.0});
    y.add(GateKind::RX, {0}, {1.0});
    EXPECT_TRUE(label_match(x, y));
}

TEST(FindIsomorphs, BvBlocksAreDisjointAndMatching) {
    auto c = bench::bernstein_vazirani(16);
    auto g = build_graph(c);
    auto block = find_isomorphs(g, c, 8);
    ASSERT_FALSE(block.empty());
    std::set<int> seen;
    for (const auto &inst : block.instances) {
        for (int v : inst) EXPECT_TRUE(seen.insert(v).second);
        // whole gates only
        for (int v : inst) EXPECT_TRUE(std::binary_search(inst.begin(), inst.end(), v ^ 1));
        EXPECT_TRUE(label_match(extract_subcircuit(c, g, inst), block.pattern));
        EXPECT_LE(extract_subcircuit(c, g, inst).num_qubits(), 8);
    }
    EXPECT_EQ(block.pattern.num_qubits(), 8);
}

TEST(FindIsomorphs, Deterministic) {
    auto c = bench::ghz(12);
    auto g = build_graph(c);
    auto a = find_isomorphs(g, c, 5, {}, 3), b = find_isomorphs(g, c, 5, {}, 3);
    EXPECT_EQ(a.instances, b.instances);
    EXPECT_EQ(a.restart, b.restart);
}

TEST(FindIsomorphs, RandomAnglesGiveNoBlock) {
    auto c = bench::hardware_efficient_ansatz(16);
    auto block = find_isomorphs(build_graph(c), c, 12);
    EXPECT_TRUE(block.empty());
    EXPECT_TRUE(contract_isomorphs(build_graph(c), block).super_nodes().empty());
}

TEST(FindIsomorphs, RejectsForeignGraph) {
    auto c = bench::ghz(6);
    EXPECT_THROW(find_isomorphs(build_graph(bench::ghz(7)), c, 4), std::invalid_argument);
    auto g = build_graph(c);
    EXPECT_THROW(find_isomorphs(contract(g, {0, 1}), c, 4), std::invalid_argument);
}

TEST(ContractIsomorphs, OnlyBoundaryEdgesStayCuttable) {
    auto c = bench::bernstein_vazirani(64);
    auto g = build_graph(c);
    auto t = preset_topology("toronto-x20");
    auto block = find_isomorphs(g, c, t.max_capacity());
    ASSERT_EQ(block.instances.size(), 2u);
    EXPECT_EQ(block.boundary_edge_count, 3);
    auto cg = contract_isomorphs(g, block);
    ASSERT_EQ(cg.super_nodes().size(), 2u);
    for (const auto &e : cg.edges()) {
        const bool inside = cg.nodes()[e.a].super >= 0 && cg.nodes()[e.a].super == cg.nodes()[e.b].super;
        EXPECT_EQ(e.cuttable, !inside);
    }
    // the contracted search separates the two instances with three wire cuts
    auto sol = search_min_cost(cg, t);
    EXPECT_EQ(sol.cuts.k1(), 3);
    EXPECT_EQ(sol.cuts.k2(), 0);
}

TEST(ContractIsomorphs, ReusedSupers) {
    IsoBlock b;
    b.instances = {{0, 1}, {2, 3}, {4, 5}};
    EXPECT_EQ(reused_supers(b, 0), std::vector<int>{});
    EXPECT_EQ(reused_supers(b, 2), (std::vector<int>{1, 2}));
    EXPECT_THROW(reused_supers(b, 3), std::invalid_argument);
    EXPECT_THROW(reused_supers(b, -1), std::invalid_argument);
}

TEST(ContractIsomorphs, ReuseLowersSamplingItem) {
    auto c = bench::bernstein_vazirani(64);
    auto g = build_graph(c);
    auto t = preset_topology("toronto-x20");
    auto cg = contract_isomorphs(g, find_isomorphs(g, c, t.max_capacity()));
    SearchOptions plain, reuse;
    reuse.reused_supers = {1};
    auto a = search_min_cost(cg, t, plain), b = search_min_cost(cg, t, reuse);
    EXPECT_EQ(a.cuts.k1(), b.cuts.k1());
    EXPECT_LT(b.cost.s16, a.cost.s16);
    EXPECT_EQ(variant_count(1, 1), 12u);
}

TEST(ExtractSubcircuit, AttachesSingleQubitGates) {
    auto c = bench::bernstein_vazirani(4);
    auto g = build_graph(c);
    // first CX: the ancilla carries X and H before it, q0 carries H before and after
    auto sub = extract_subcircuit(c, g, {0, 1});
    EXPECT_EQ(sub.num_qubits(), 2);
    int single = 0;
    for (const auto &gate : sub.gates()) single += !gate.two_qubit();
    EXPECT_EQ(single, 4);
}
