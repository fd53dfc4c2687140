#include "cutmap/interaction_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace cutmap {

UnionFind::UnionFind(int n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

int UnionFind::find(int x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
}

int InteractionGraph::num_cuttable() const {
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [](const IgEdge &e) { return e.cuttable; }));
}

InteractionGraph build_graph(const Circuit &c) {
    InteractionGraph g;
    g.num_qubits_ = c.num_qubits();
    g.by_qubit_.assign(c.num_qubits(), {});
    for (const auto &gate : c.gates()) {
        if (!gate.two_qubit()) continue;
        const int a = static_cast<int>(g.nodes_.size());
        for (int q : gate.qubits) {
            IgNode n;
            n.qubit = q;
            n.occurrence = static_cast<int>(g.by_qubit_[q].size());
            n.gate_seq = gate.seq;
            g.by_qubit_[q].push_back(static_cast<int>(g.nodes_.size()));
            g.nodes_.push_back(n);
        }
        IgEdge e;
        e.kind = EdgeKind::Gate;
        e.a = a;
        e.b = a + 1;
        e.gate_seq = gate.seq;
        e.qubit = gate.qubits[0];
        g.edges_.push_back(e);
    }
    if (g.nodes_.empty()) throw NothingToCut();
    for (int q = 0; q < c.num_qubits(); ++q) {
        const auto &ids = g.by_qubit_[q];
        for (std::size_t i = 1; i < ids.size(); ++i) {
            IgEdge e;
            e.kind = EdgeKind::Wire;
            e.a = ids[i - 1];
            e.b = ids[i];
            e.gate_seq = g.nodes_[ids[i - 1]].gate_seq;
            e.qubit = q;
            g.edges_.push_back(e);
        }
    }
    std::sort(g.edges_.begin(), g.edges_.end(), [](const IgEdge &x, const IgEdge &y) {
        return std::tuple(x.gate_seq, x.kind == EdgeKind::Wire, x.qubit) <
               std::tuple(y.gate_seq, y.kind == EdgeKind::Wire, y.qubit);
    });
    for (std::size_t i = 0; i < g.edges_.size(); ++i) g.edges_[i].id = static_cast<int>(i);
    return g;
}

std::optional<std::vector<int>> apply_cuts(const InteractionGraph &g, const std::vector<bool> &s) {
    const int n = static_cast<int>(g.nodes().size());
    UnionFind uf(n);
    for (const auto &e : g.edges()) {
        const bool cut = static_cast<std::size_t>(e.id) < s.size() && s[e.id];
        if (cut && !e.cuttable) return std::nullopt;
        if (!cut) uf.unite(e.a, e.b);
    }
    std::vector<int> comp(n, -1), label(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        const int r = uf.find(i);
        if (label[r] < 0) label[r] = next++;
        comp[i] = label[r];
    }
    return comp;
}

InteractionGraph contract(const InteractionGraph &g, const std::vector<int> &members) {
    if (members.empty()) throw std::invalid_argument("cannot contract an empty node set");
    std::vector<char> in(g.nodes().size(), 0);
    for (int m : members) {
        if (m < 0 || m >= static_cast<int>(g.nodes().size())) throw std::invalid_argument("node id out of range");
        if (g.nodes()[m].super >= 0) throw std::invalid_argument("node " + std::to_string(m) + " is already contracted");
        in[m] = 1;
    }
    UnionFind uf(static_cast<int>(g.nodes().size()));
    for (const auto &e : g.edges())
        if (in[e.a] && in[e.b]) uf.unite(e.a, e.b);
    if (uf.size_of(members[0]) != static_cast<int>(std::count(in.begin(), in.end(), 1)))
        throw std::invalid_argument("super node members are not connected");

    InteractionGraph out = g;
    const int id = static_cast<int>(out.supers_.size());
    std::vector<int> sorted(members);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    out.supers_.push_back(sorted);
    for (int m : sorted) out.nodes_[m].super = id;
    for (auto &e : out.edges_)
        if (in[e.a] && in[e.b]) e.cuttable = false;
    return out;
}

std::string to_dot(const InteractionGraph &g) {
    std::ostringstream os;
    os << "graph interaction {\n  node [shape=circle];\n";
    for (std::size_t s = 0; s < g.super_nodes().size(); ++s) {
        os << "  subgraph cluster_" << s << " {\n    label=\"S" << s << "\";\n";
        for (int m : g.super_nodes()[s]) os << "    n" << m << ";\n";
        os << "  }\n";
    }
    for (std::size_t i = 0; i < g.nodes().size(); ++i) {
        const auto &n = g.nodes()[i];
        os << "  n" << i << " [label=\"q_" << n.qubit << "^(" << n.occurrence << ")\"];\n";
    }
    for (const auto &e : g.edges()) {
        os << "  n" << e.a << " -- n" << e.b << " [label=\"" << e.id << "\"";
        if (e.kind == EdgeKind::Gate) os << ", style=dashed";
        if (!e.cuttable) os << ", color=gray";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace cutmap
