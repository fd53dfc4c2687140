#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutmap/circuit.hpp"

namespace cutmap {

/// Raised when a circuit has no two-qubit gate to cut.
class NothingToCut : public std::invalid_argument {
public:
    NothingToCut() : std::invalid_argument("nothing to cut: the circuit has no two-qubit gates") {}
};

/// One qubit's appearance in a two-qubit gate.
struct IgNode {
    int qubit = 0;
    int occurrence = 0;  // ordinal among this qubit's two-qubit gates
    int gate_seq = 0;
    int super = -1;      // super node id, -1 when not contracted
};

enum class EdgeKind { Gate, Wire };

struct IgEdge {
    int id = 0;  // position in the canonical order
    EdgeKind kind = EdgeKind::Gate;
    int a = 0, b = 0;  // node ids; for GATE edges a is operand 0
    int gate_seq = 0;  // GATE: the gate; WIRE: the gate of the earlier occurrence
    int qubit = 0;     // WIRE: the qubit; GATE: operand 0
    bool cuttable = true;
};

class InteractionGraph {
public:
    int num_qubits() const { return num_qubits_; }
    const std::vector<IgNode> &nodes() const { return nodes_; }
    const std::vector<IgEdge> &edges() const { return edges_; }
    const std::vector<std::vector<int>> &super_nodes() const { return supers_; }
    /// Node ids of one qubit in occurrence order.
    const std::vector<int> &qubit_nodes(int q) const { return by_qubit_[q]; }
    int num_cuttable() const;

    friend InteractionGraph build_graph(const Circuit &c);
    friend InteractionGraph contract(const InteractionGraph &g, const std::vector<int> &members);

private:
    int num_qubits_ = 0;
    std::vector<IgNode> nodes_;
    std::vector<IgEdge> edges_;
    std::vector<std::vector<int>> supers_;
    std::vector<std::vector<int>> by_qubit_;
};

/// Edges sorted by (min gate seq, GATE before WIRE, qubit).
/// @throws NothingToCut when c has no two-qubit gate
InteractionGraph build_graph(const Circuit &c);

/// Component id per node after deleting the edges with s[i] = true. Edges beyond s.size()
/// stay. Returns nullopt if s cuts an edge inside a super node.
std::optional<std::vector<int>> apply_cuts(const InteractionGraph &g, const std::vector<bool> &s);

/// Replaces the member nodes by one super node; edges among them become uncuttable.
/// @throws std::invalid_argument if the members are not connected or already contracted
InteractionGraph contract(const InteractionGraph &g, const std::vector<int> &members);

/// Graphviz text: nodes labelled q_i^(occ), GATE edges dashed, super nodes as clusters.
std::string to_dot(const InteractionGraph &g);

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(int n = 0);
    int find(int x);
    bool unite(int a, int b);
    int size_of(int x) { return size_[find(x)]; }

private:
    std::vector<int> parent_, size_;
};

}  // namespace cutmap
