#pragma once

#include <cstdint>
#include <vector>

#include "cutmap/circuit.hpp"
#include "cutmap/interaction_graph.hpp"

namespace cutmap {

/// Gate-disjoint sub-circuits of one circuit that are isomorphic to a common template.
struct IsoBlock {
    Circuit pattern;                          // the first instance as a stand-alone circuit
    std::vector<std::vector<int>> instances;  // sorted node ids in the interaction graph
    int boundary_edge_count = 0;              // edges leaving an instance
    int restart = -1;                         // restart that produced the block

    bool empty() const { return instances.size() < 2; }
};

struct ReuseConfig {
    int restarts = 10;
    int reuse_count = 0;  // instances that take their results from another; 0 disables reuse
};

/// Greedy template growth with restarts. Instances hold whole gates and use at most
/// `max_qubits` qubit segments each. Returns an empty block when no template has two
/// disjoint matches.
/// @throws std::invalid_argument if g was built from a different circuit than c, or is contracted
IsoBlock find_isomorphs(const InteractionGraph &g, const Circuit &c, int max_qubits,
                        const ReuseConfig &cfg = {}, std::uint64_t seed = 1);

/// True when the two circuits have isomorphic labelled interaction graphs: gate kinds,
/// operand positions, attached single-qubit gates and angles (within kAngleTol) agree.
bool label_match(const Circuit &a, const Circuit &b);

/// Gates attached to the given nodes, renumbered onto qubits 0..k-1 in order of first use.
Circuit extract_subcircuit(const Circuit &c, const InteractionGraph &g, const std::vector<int> &nodes);

/// One super node per instance, in instance order. An empty block leaves g unchanged.
InteractionGraph contract_isomorphs(const InteractionGraph &g, const IsoBlock &block);

/// Super node ids that reuse the results of super node 0: 1..n.
/// @throws std::invalid_argument unless 0 <= n < instance count
std::vector<int> reused_supers(const IsoBlock &block, int n);

}  // namespace cutmap
