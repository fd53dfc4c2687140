#include "cutmap/iso_reuse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/vf2_sub_graph_iso.hpp>

namespace cutmap {

namespace {

struct OneQubit {
    GateKind kind;
    std::vector<double> params;
};

struct NodeLabel {
    GateKind kind = GateKind::CX;
    std::vector<double> params;
    int position = 0;  // operand index in the two-qubit gate
    std::vector<OneQubit> pre;   // single-qubit gates since the previous occurrence
    std::vector<OneQubit> post;  // trailing gates, only on a qubit's last occurrence
};

bool same_params(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > kAngleTol) return false;
    return true;
}

bool same_sequence(const std::vector<OneQubit> &a, const std::vector<OneQubit> &b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].kind != b[i].kind || !same_params(a[i].params, b[i].params)) return false;
    return true;
}

bool same_label(const NodeLabel &a, const NodeLabel &b) {
    return a.kind == b.kind && a.position == b.position && same_params(a.params, b.params) &&
           same_sequence(a.pre, b.pre) && same_sequence(a.post, b.post);
}

// Labels in the node order of build_graph: two nodes per two-qubit gate, operand order.
std::vector<NodeLabel> node_labels(const Circuit &c) {
    std::vector<NodeLabel> labels;
    std::vector<std::vector<OneQubit>> pending(c.num_qubits());
    std::vector<int> last(c.num_qubits(), -1);
    for (const auto &g : c.gates()) {
        if (!g.two_qubit()) {
            pending[g.qubits[0]].push_back({g.kind, g.params});
            continue;
        }
        for (int i = 0; i < 2; ++i) {
            const int q = g.qubits[i];
            NodeLabel l;
            l.kind = g.kind;
            l.params = g.params;
            l.position = i;
            l.pre = std::move(pending[q]);
            pending[q].clear();
            last[q] = static_cast<int>(labels.size());
            labels.push_back(std::move(l));
        }
    }
    for (int q = 0; q < c.num_qubits(); ++q)
        if (last[q] >= 0) labels[last[q]].post = std::move(pending[q]);
    return labels;
}

using LabelGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::bidirectionalS, boost::no_property,
                                         boost::property<boost::edge_name_t, int>>;

LabelGraph whole_graph(const InteractionGraph &g) {
    LabelGraph out(g.nodes().size());
    for (const auto &e : g.edges()) boost::add_edge(e.a, e.b, static_cast<int>(e.kind), out);
    return out;
}

// Induced subgraph on `nodes`; vertex i stands for nodes[i].
LabelGraph induced(const InteractionGraph &g, const std::vector<int> &nodes) {
    std::map<int, int> local;
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
    LabelGraph out(nodes.size());
    for (const auto &e : g.edges()) {
        auto a = local.find(e.a), b = local.find(e.b);
        if (a != local.end() && b != local.end())
            boost::add_edge(a->second, b->second, static_cast<int>(e.kind), out);
    }
    return out;
}

struct VertexMatch {
    const std::vector<NodeLabel> *small_labels;
    const std::vector<int> *small_nodes;  // null when small vertices index labels directly
    const std::vector<NodeLabel> *large_labels;
    bool operator()(std::size_t s, std::size_t l) const {
        const std::size_t si = small_nodes ? static_cast<std::size_t>((*small_nodes)[s]) : s;
        return same_label((*small_labels)[si], (*large_labels)[l]);
    }
};

// Collects distinct matched node sets; stops at the first disjoint pair when asked, or
// after `cap` sets.
struct MatchCollector {
    std::set<std::vector<int>> *found;
    std::size_t cap;
    bool stop_at_pair;
    bool *pair_found;
    std::size_t num_small;

    template <class SmallToLarge, class LargeToSmall>
    bool operator()(SmallToLarge f, LargeToSmall) const {
        std::vector<int> nodes;
        for (std::size_t v = 0; v < num_small; ++v) nodes.push_back(static_cast<int>(get(f, v)));
        std::sort(nodes.begin(), nodes.end());
        if (!found->insert(nodes).second) return true;
        if (stop_at_pair) {
            for (const auto &other : *found) {
                if (other == nodes) continue;
                std::vector<int> common;
                std::set_intersection(other.begin(), other.end(), nodes.begin(), nodes.end(),
                                      std::back_inserter(common));
                if (common.empty()) {
                    *pair_found = true;
                    return false;
                }
            }
        }
        return found->size() < cap;
    }
};

constexpr std::size_t kPairSearchCap = 50'000;
constexpr std::size_t kEnumerationCap = 200'000;

class Matcher {
public:
    Matcher(const InteractionGraph &g, const std::vector<NodeLabel> &labels)
        : g_(g), labels_(labels), large_(whole_graph(g)) {}

    // Distinct node sets matching the induced template on `nodes`.
    std::set<std::vector<int>> matches(const std::vector<int> &nodes, bool stop_at_pair, bool &pair_found,
                                       std::size_t cap) const {
        LabelGraph small = induced(g_, nodes);
        std::set<std::vector<int>> found;
        pair_found = false;
        MatchCollector cb{&found, cap, stop_at_pair, &pair_found, nodes.size()};
        VertexMatch vm{&labels_, &nodes, &labels_};
        auto em = boost::make_property_map_equivalent(boost::get(boost::edge_name, small),
                                                      boost::get(boost::edge_name, large_));
        boost::vf2_subgraph_iso(small, large_, cb, boost::vertex_order_by_mult(small),
                                boost::edges_equivalent(em).vertices_equivalent(vm));
        return found;
    }

    bool has_disjoint_pair(const std::vector<int> &nodes) const {
        bool pair = false;
        matches(nodes, true, pair, kPairSearchCap);
        return pair;
    }

private:
    const InteractionGraph &g_;
    const std::vector<NodeLabel> &labels_;
    LabelGraph large_;
};

// Qubit segments used by a node set: maximal runs of consecutive occurrences per qubit.
int segment_count(const InteractionGraph &g, const std::vector<int> &nodes) {
    std::map<int, std::vector<int>> occ;
    for (int v : nodes) occ[g.nodes()[v].qubit].push_back(g.nodes()[v].occurrence);
    int segments = 0;
    for (auto &[q, list] : occ) {
        std::sort(list.begin(), list.end());
        for (std::size_t i = 0; i < list.size(); ++i) segments += i == 0 || list[i] != list[i - 1] + 1;
    }
    return segments;
}

int boundary_of(const InteractionGraph &g, const std::vector<int> &instance_of) {
    int n = 0;
    for (const auto &e : g.edges()) {
        const int a = instance_of[e.a], b = instance_of[e.b];
        n += a != b && (a >= 0 || b >= 0);
    }
    return n;
}

void check_graph_matches(const InteractionGraph &g, const Circuit &c) {
    if (!g.super_nodes().empty()) throw std::invalid_argument("find_isomorphs needs an uncontracted graph");
    std::size_t k = 0;
    for (const auto &gate : c.gates()) {
        if (!gate.two_qubit()) continue;
        if (2 * k + 1 >= g.nodes().size() || g.nodes()[2 * k].gate_seq != gate.seq)
            throw std::invalid_argument("interaction graph does not belong to the circuit");
        ++k;
    }
    if (2 * k != g.nodes().size()) throw std::invalid_argument("interaction graph does not belong to the circuit");
}

}  // namespace

IsoBlock find_isomorphs(const InteractionGraph &g, const Circuit &c, int max_qubits, const ReuseConfig &cfg,
                        std::uint64_t seed) {
    if (cfg.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
    check_graph_matches(g, c);
    const auto labels = node_labels(c);
    const int n = static_cast<int>(g.nodes().size());
    std::vector<std::vector<int>> adj(n);
    for (const auto &e : g.edges()) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    Matcher matcher(g, labels);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n / 2 - 1);

    IsoBlock best;
    for (int r = 0; r < cfg.restarts; ++r) {
        // the unit of growth is a gate: nodes 2i and 2i+1
        const int start = pick(rng);
        std::vector<int> tmpl{2 * start, 2 * start + 1};
        if (segment_count(g, tmpl) > max_qubits || !matcher.has_disjoint_pair(tmpl)) continue;
        std::vector<char> in(n, 0);
        in[2 * start] = in[2 * start + 1] = 1;
        while (true) {
            std::set<int> gates;
            for (int v : tmpl)
                for (int u : adj[v])
                    if (!in[u]) gates.insert(u / 2);
            // fewest new boundary edges first, then gate order
            std::vector<std::pair<int, int>> order;
            for (int gi : gates) {
                int delta = 0;
                for (int v : {2 * gi, 2 * gi + 1})
                    for (int u : adj[v])
                        if (u / 2 != gi) delta += in[u] ? -1 : 1;
                order.push_back({delta, gi});
            }
            std::sort(order.begin(), order.end());
            bool grown = false;
            for (const auto &[delta, gi] : order) {
                auto next = tmpl;
                next.push_back(2 * gi);
                next.push_back(2 * gi + 1);
                if (segment_count(g, next) > max_qubits || !matcher.has_disjoint_pair(next)) continue;
                tmpl = std::move(next);
                in[2 * gi] = in[2 * gi + 1] = 1;
                grown = true;
                break;
            }
            if (!grown) break;
        }

        bool unused = false;
        auto all = matcher.matches(tmpl, false, unused, kEnumerationCap);
        std::vector<std::vector<int>> chosen;
        std::vector<int> instance_of(n, -1);
        for (const auto &m : all) {
            if (std::any_of(m.begin(), m.end(), [&](int v) { return instance_of[v] >= 0; })) continue;
            for (int v : m) instance_of[v] = static_cast<int>(chosen.size());
            chosen.push_back(m);
        }
        if (chosen.size() < 2) continue;
        const int boundary = boundary_of(g, instance_of);
        if (best.empty() || boundary < best.boundary_edge_count) {
            best.instances = std::move(chosen);
            best.boundary_edge_count = boundary;
            best.restart = r;
        }
    }
    if (!best.empty()) best.pattern = extract_subcircuit(c, g, best.instances.front());
    return best;
}

Circuit extract_subcircuit(const Circuit &c, const InteractionGraph &g, const std::vector<int> &nodes) {
    std::set<int> keep;
    for (int v : nodes) keep.insert(g.nodes().at(v).gate_seq);
    // a single-qubit gate travels with the next two-qubit occurrence on its qubit, or the last one
    std::vector<int> owner(c.gates().size(), -1);
    std::vector<std::vector<int>> waiting(c.num_qubits());
    std::vector<int> last(c.num_qubits(), -1);
    for (const auto &gate : c.gates()) {
        if (!gate.two_qubit()) {
            waiting[gate.qubits[0]].push_back(gate.seq);
            continue;
        }
        for (int q : gate.qubits) {
            for (int s : waiting[q]) owner[s] = gate.seq;
            waiting[q].clear();
            last[q] = gate.seq;
        }
    }
    for (int q = 0; q < c.num_qubits(); ++q)
        for (int s : waiting[q]) owner[s] = last[q];

    std::map<int, int> local;
    std::vector<Gate> picked;
    for (const auto &gate : c.gates()) {
        const int anchor = gate.two_qubit() ? gate.seq : owner[gate.seq];
        if (anchor < 0 || !keep.count(anchor)) continue;
        Gate copy = gate;
        for (int &q : copy.qubits) q = local.try_emplace(q, static_cast<int>(local.size())).first->second;
        picked.push_back(std::move(copy));
    }
    Circuit out(std::max<int>(1, static_cast<int>(local.size())));
    for (const auto &gate : picked) out.add(gate.kind, gate.qubits, gate.params);
    return out;
}

bool label_match(const Circuit &a, const Circuit &b) {
    const auto la = node_labels(a), lb = node_labels(b);
    if (la.size() != lb.size()) return false;
    if (la.empty()) {
        // no two-qubit gates: compare the per-qubit gate sequences as multisets
        auto sequences = [](const Circuit &c) {
            std::vector<std::vector<OneQubit>> seq(c.num_qubits());
            for (const auto &g : c.gates()) seq[g.qubits[0]].push_back({g.kind, g.params});
            std::erase_if(seq, [](const auto &s) { return s.empty(); });
            return seq;
        };
        auto sa = sequences(a), sb = sequences(b);
        if (sa.size() != sb.size()) return false;
        std::vector<char> used(sb.size(), 0);
        for (const auto &s : sa) {
            bool hit = false;
            for (std::size_t j = 0; j < sb.size() && !hit; ++j)
                if (!used[j] && same_sequence(s, sb[j])) used[j] = hit = true;
            if (!hit) return false;
        }
        return true;
    }
    const auto ga = whole_graph(build_graph(a)), gb = whole_graph(build_graph(b));
    if (boost::num_edges(ga) != boost::num_edges(gb)) return false;
    VertexMatch vm{&la, nullptr, &lb};
    auto em = boost::make_property_map_equivalent(boost::get(boost::edge_name, ga), boost::get(boost::edge_name, gb));
    return boost::vf2_graph_iso(ga, gb, [](auto, auto) { return false; }, boost::vertex_order_by_mult(ga),
                                boost::edges_equivalent(em).vertices_equivalent(vm));
}

InteractionGraph contract_isomorphs(const InteractionGraph &g, const IsoBlock &block) {
    if (block.empty()) return g;
    InteractionGraph out = g;
    for (const auto &inst : block.instances) out = contract(out, inst);
    return out;
}

std::vector<int> reused_supers(const IsoBlock &block, int n) {
    if (n < 0 || (n > 0 && n >= static_cast<int>(block.instances.size())))
        throw std::invalid_argument("reuse count " + std::to_string(n) + " must be below the instance count " +
                                    std::to_string(block.instances.size()));
    std::vector<int> ids;
    for (int i = 1; i <= n; ++i) ids.push_back(i);
    return ids;
}

}  // namespace cutmap
