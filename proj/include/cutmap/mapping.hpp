#pragma once

#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "cutmap/circuit.hpp"
#include "cutmap/topology.hpp"

namespace cutmap {

/// Per-qubit count of two-qubit gates it takes part in.
std::vector<int> profile(const Circuit &c);

/// Weakness between qubit groups: 1 / (inter-group two-qubit gates), infinity when none.
std::vector<std::vector<double>> weakness_profile(const Circuit &c, const std::vector<int> &group_of,
                                                  int num_groups);

/// Weighted undirected interaction (a, b, count).
using WeightedEdge = std::tuple<int, int, int>;

std::vector<WeightedEdge> interaction_edges(const Circuit &c);

/// Assigns n items to groups of the given capacities minimising the total weight of edges
/// between groups. Exact for n <= exact_limit, greedy fill plus pairwise-exchange
/// refinement above it. Deterministic.
std::vector<int> partition_min_crossing(int n, const std::vector<WeightedEdge> &edges,
                                        const std::vector<int> &capacities, int exact_limit = 10);

/// Total weight of edges whose endpoints sit in different groups.
int crossing_weight(const std::vector<WeightedEdge> &edges, const std::vector<int> &group_of);

struct MappingState {
    std::vector<PhysQubit> l2p;  // one entry per logical qubit
};

/// Hotness-ordered placement: the hottest qubit goes to the data qubit with the best
/// degree x average reliability, its partners follow by interaction count onto the most
/// reliable positions near their mapped partners, spilling to the next QPU when full.
/// @throws std::invalid_argument when the circuit exceeds the total data capacity
MappingState hotness_map(const Circuit &c, const DqcTopology &t);

/// Partition into per-QPU groups with the fewest inter-group gates; qubits with
/// inter-group gates sit closest to the COMM qubits.
/// @throws std::invalid_argument when the circuit exceeds the total data capacity
MappingState weakness_map(const Circuit &c, const DqcTopology &t);

enum class Policy { Hotness, Weakness };
std::string policy_name(Policy p);

struct RouteOptions {
    double extended_weight = 0.5;
    int lookahead = 20;      // gates considered when weighing a remote SWAP
    int extended_cap = 20;   // gates per qubit in the extended set
    bool allow_remote_swap = true;
};

enum class OpKind { Gate, Swap, RemoteGate, RemoteSwap, EprOpen, EprClose };

struct RoutedOp {
    OpKind kind = OpKind::Gate;
    GateKind gate = GateKind::H;
    std::vector<double> params;
    std::vector<PhysQubit> phys;
    std::vector<int> logical;  // logical qubits at emission time, -1 for an empty slot
    int source_seq = -1;       // seq of the input gate, -1 for inserted operations
    int session = -1;          // EPR session id for remote operations and session events
};

struct RouteMetrics {
    int swaps = 0;
    int epr_pairs = 0;
    int remote_gates = 0;
    int remote_swaps = 0;
    long depth = 0;
};

struct RoutedCircuit {
    std::vector<RoutedOp> ops;
    MappingState initial;
    MappingState final_state;
    RouteMetrics metrics;
};

/// Routes the circuit from `init`, inserting SWAPs and remote operations.
/// @throws std::invalid_argument if `init` is not an injective placement on data qubits
RoutedCircuit route(const Circuit &c, const MappingState &init, const DqcTopology &t,
                    const RouteOptions &opt = {});

RouteMetrics metrics(const RoutedCircuit &r);

struct PolicyChoice {
    Policy policy = Policy::Hotness;
    MappingState state;
    int epr_hotness = 0;
    int epr_weakness = 0;
};

/// Dry-routes both placements and keeps the one with fewer EPR pairs; hotness on ties.
PolicyChoice choose_policy(const Circuit &c, const DqcTopology &t, const RouteOptions &opt = {});

}  // namespace cutmap
