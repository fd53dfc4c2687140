#include "cutmap/hemicut.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "cutmap/mapping.hpp"

namespace cutmap {

std::string cost_order_name(CostOrder o) {
    return o == CostOrder::PostprocFirst ? "postproc-first" : "sampling-first";
}

CostOrder parse_cost_order(const std::string &name) {
    if (name == "postproc-first") return CostOrder::PostprocFirst;
    if (name == "sampling-first") return CostOrder::SamplingFirst;
    throw std::invalid_argument("unknown cost order '" + name + "' (postproc-first, sampling-first)");
}

BigInt CostTuple::sampling() const {
    BigInt v = 1;
    for (int i = 0; i < s16; ++i) v *= 16;
    for (int i = 0; i < s9; ++i) v *= 9;
    return v;
}

namespace {

// Compares x^a y^b with x^c y^d for x, y in {4,6} or {16,9}. Distinct exponent pairs give
// distinct values by unique factorisation, so the log comparison never sees a true tie.
int power_cmp(int a, int b, int c, int d, double lx, double ly) {
    if (a == c && b == d) return 0;
    const double l = a * lx + b * ly, r = c * lx + d * ly;
    return l < r ? -1 : 1;
}

int post_cmp(const CostTuple &a, const CostTuple &b) {
    return power_cmp(a.k1, a.k2, b.k1, b.k2, std::log(4.0), std::log(6.0));
}

int samp_cmp(const CostTuple &a, const CostTuple &b) {
    return power_cmp(a.s16, a.s9, b.s16, b.s9, std::log(16.0), std::log(9.0));
}

}  // namespace

int compare(const CostTuple &a, const CostTuple &b, CostOrder order) {
    if (a.remote != b.remote) return a.remote < b.remote ? -1 : 1;
    const int first = order == CostOrder::PostprocFirst ? post_cmp(a, b) : samp_cmp(a, b);
    if (first) return first;
    const int second = order == CostOrder::PostprocFirst ? samp_cmp(a, b) : post_cmp(a, b);
    if (second) return second;
    if (a.depth != b.depth) return a.depth > b.depth ? -1 : 1;
    return 0;
}

std::vector<bool> CutSet::as_vector(std::size_t num_edges) const {
    std::vector<bool> s(num_edges, false);
    for (int e : wire_cuts) s.at(e) = true;
    for (int e : gate_cuts) s.at(e) = true;
    return s;
}

CutSet cutset_from(const InteractionGraph &g, const std::vector<bool> &s) {
    CutSet out;
    for (std::size_t i = 0; i < s.size() && i < g.edges().size(); ++i) {
        if (!s[i]) continue;
        (g.edges()[i].kind == EdgeKind::Wire ? out.wire_cuts : out.gate_cuts).push_back(static_cast<int>(i));
    }
    return out;
}

CutLocations locate(const InteractionGraph &g, const CutSet &cuts) {
    CutLocations loc;
    for (int e : cuts.wire_cuts) {
        const auto &edge = g.edges().at(e);
        loc.wires.push_back({edge.qubit, g.nodes()[edge.a].occurrence});
    }
    for (int e : cuts.gate_cuts) loc.gates.push_back(g.edges().at(e).gate_seq);
    std::sort(loc.wires.begin(), loc.wires.end());
    std::sort(loc.gates.begin(), loc.gates.end());
    return loc;
}

namespace {

// Evaluates decision prefixes: feasibility, overhead exponents and component sizes.
class Evaluator {
public:
    Evaluator(const InteractionGraph &g, int capacity, const std::vector<int> &reused)
        : g_(g), cap_(capacity), uf_(0) {
        const int n = static_cast<int>(g.nodes().size());
        wire_after_.assign(n, -1);
        for (const auto &e : g.edges())
            if (e.kind == EdgeKind::Wire) wire_after_[e.a] = e.id;
        for (int s : reused) {
            std::vector<char> in(n, 0);
            for (int m : g.super_nodes().at(s)) in[m] = 1;
            std::vector<int> boundary;
            for (const auto &e : g.edges())
                if (in[e.a] != in[e.b]) boundary.push_back(e.id);
            boundary_.push_back(boundary);
        }
        keys_.resize(n);
    }

    struct Result {
        bool feasible = true;
        int largest = 0;
        CostTuple cost;
    };

    // Undecided edges (index >= s.size()) count as cut for connectivity.
    Result eval(const std::vector<bool> &s) {
        Result r;
        const int n = static_cast<int>(g_.nodes().size());
        uf_ = UnionFind(n);
        for (const auto &e : g_.edges()) {
            const bool decided = static_cast<std::size_t>(e.id) < s.size();
            if (!e.cuttable || (decided && !s[e.id])) uf_.unite(e.a, e.b);
            if (decided && s[e.id]) ++(e.kind == EdgeKind::Wire ? r.cost.k1 : r.cost.k2);
        }
        for (int q = 0; q < g_.num_qubits(); ++q) {
            int seg = 0;
            for (int node : g_.qubit_nodes(q)) {
                keys_[node] = {uf_.find(node), q, seg};
                const int w = wire_after_[node];
                if (w >= 0 && static_cast<std::size_t>(w) < s.size() && s[w]) ++seg;
            }
        }
        auto sorted = keys_;
        std::sort(sorted.begin(), sorted.end());
        int run = 0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            const bool new_comp = i == 0 || sorted[i][0] != sorted[i - 1][0];
            if (new_comp) run = 0;
            if (new_comp || sorted[i] != sorted[i - 1]) ++run;
            r.largest = std::max(r.largest, run);
        }
        r.feasible = r.largest <= cap_ && r.largest <= g_.num_qubits();
        r.cost.s16 = r.cost.k1;
        r.cost.s9 = r.cost.k2;
        for (const auto &boundary : boundary_) {
            bool any = false, wire = false;
            for (int e : boundary)
                if (static_cast<std::size_t>(e) < s.size() && s[e]) {
                    any = true;
                    wire = wire || g_.edges()[e].kind == EdgeKind::Wire;
                }
            if (!any) continue;
            if (wire && r.cost.s16 > 0) --r.cost.s16;
            else if (r.cost.s9 > 0) --r.cost.s9;
            else if (r.cost.s16 > 0) --r.cost.s16;
        }
        r.cost.depth = static_cast<int>(s.size());
        return r;
    }

private:
    const InteractionGraph &g_;
    int cap_;
    UnionFind uf_;
    std::vector<int> wire_after_;
    std::vector<std::vector<int>> boundary_;
    std::vector<std::array<int, 3>> keys_;
};

struct Candidate {
    std::vector<bool> s;
    CostTuple cost;
    long counter = 0;
};

}  // namespace

std::vector<int> component_qubits(const InteractionGraph &g, const std::vector<bool> &s) {
    const int n = static_cast<int>(g.nodes().size());
    UnionFind uf(n);
    std::vector<int> wire_after(n, -1);
    for (const auto &e : g.edges()) {
        if (e.kind == EdgeKind::Wire) wire_after[e.a] = e.id;
        const bool decided = static_cast<std::size_t>(e.id) < s.size();
        if (!e.cuttable || (decided && !s[e.id])) uf.unite(e.a, e.b);
    }
    std::vector<std::array<int, 3>> keys;
    for (int q = 0; q < g.num_qubits(); ++q) {
        int seg = 0;
        for (int node : g.qubit_nodes(q)) {
            keys.push_back({uf.find(node), q, seg});
            const int w = wire_after[node];
            if (w >= 0 && static_cast<std::size_t>(w) < s.size() && s[w]) ++seg;
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> sizes;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i == 0 || keys[i][0] != keys[i - 1][0]) sizes.push_back(0);
        ++sizes.back();
    }
    return sizes;
}

CutSolution search_min_cost(const InteractionGraph &g, const DqcTopology &t, const SearchOptions &opt) {
    const std::size_t E = g.edges().size();
    Evaluator ev(g, t.max_capacity(), opt.reused_supers);
    std::optional<Candidate> best;
    int best_largest = 0;
    auto better = [&](const CostTuple &c) { return !best || compare(c, best->cost, opt.order) < 0; };

    if (opt.seed_with_dive) {
        std::vector<bool> s;
        s.reserve(E);
        bool ok = true;
        for (std::size_t i = 0; i < E && ok; ++i) {
            s.push_back(false);
            if (ev.eval(s).feasible) continue;
            if (!g.edges()[i].cuttable) {
                ok = false;
                break;
            }
            s.back() = true;
            ok = ev.eval(s).feasible;
        }
        if (ok) {
            auto r = ev.eval(s);
            best = Candidate{s, r.cost, 0};
            best_largest = r.largest;
        }
    }

    auto worse = [&](const Candidate &a, const Candidate &b) {
        const int c = compare(a.cost, b.cost, opt.order);
        return c > 0 || (c == 0 && a.counter > b.counter);
    };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse)> heap(worse);
    long counter = 0;
    {
        Candidate root;
        root.cost = ev.eval(root.s).cost;
        root.counter = counter++;
        heap.push(std::move(root));
    }
    CutSolution out;
    while (!heap.empty()) {
        if (out.pops >= opt.budget) {
            out.budget_exhausted = true;
            break;
        }
        Candidate cur = heap.top();
        heap.pop();
        ++out.pops;
        if (best && compare(cur.cost, best->cost, opt.order) >= 0) continue;
        const std::size_t d = cur.s.size();
        if (d == E) continue;
        for (bool cut : {false, true}) {
            if (cut && !g.edges()[d].cuttable) continue;
            Candidate child{cur.s, {}, 0};
            child.s.push_back(cut);
            auto r = ev.eval(child.s);
            if (!r.feasible) continue;
            child.cost = r.cost;
            if (!better(child.cost)) continue;
            if (child.s.size() == E) {
                best = std::move(child);
                best_largest = r.largest;
                continue;
            }
            child.counter = counter++;
            heap.push(std::move(child));
        }
    }
    if (!best) throw NoFeasibleCut();
    out.s = best->s;
    out.cost = best->cost;
    out.cuts = cutset_from(g, out.s);
    out.largest_component = best_largest;
    return out;
}

namespace {

// Segment-level view of the cut circuit: items are qubit segments between cut wires,
// edges are the uncut gates between them.
struct SegmentGraph {
    int items = 0;
    std::vector<std::pair<int, int>> gates;  // in gate order
};

SegmentGraph segment_graph(const InteractionGraph &g, const std::vector<bool> &cut) {
    const int n = static_cast<int>(g.nodes().size());
    std::vector<int> wire_after(n, -1), item(n, -1);
    for (const auto &e : g.edges())
        if (e.kind == EdgeKind::Wire) wire_after[e.a] = e.id;
    SegmentGraph sg;
    for (int q = 0; q < g.num_qubits(); ++q) {
        if (g.qubit_nodes(q).empty()) continue;
        int cur = sg.items++;
        for (int node : g.qubit_nodes(q)) {
            item[node] = cur;
            const int w = wire_after[node];
            if (w >= 0 && static_cast<std::size_t>(w) < cut.size() && cut[w]) cur = sg.items++;
        }
    }
    std::vector<std::pair<int, std::pair<int, int>>> ordered;
    for (const auto &e : g.edges()) {
        if (e.kind != EdgeKind::Gate) continue;
        if (static_cast<std::size_t>(e.id) < cut.size() && cut[e.id]) continue;
        ordered.push_back({e.gate_seq, {item[e.a], item[e.b]}});
    }
    std::sort(ordered.begin(), ordered.end());
    for (auto &[seq, p] : ordered) sg.gates.push_back(p);
    return sg;
}

int remote_for(const SegmentGraph &sg, const DqcTopology &t) {
    const auto caps_all = t.data_capacity();
    if (sg.items <= t.max_capacity()) return 0;
    std::vector<int> caps;
    for (int sum = 0, i = 0; sum < sg.items && i < static_cast<int>(caps_all.size()); ++i) {
        caps.push_back(caps_all[i]);
        sum += caps_all[i];
    }
    if (std::accumulate(caps.begin(), caps.end(), 0) < sg.items) return static_cast<int>(sg.gates.size());

    std::map<std::pair<int, int>, int> w;
    for (auto [a, b] : sg.gates) ++w[{std::min(a, b), std::max(a, b)}];
    std::vector<WeightedEdge> edges;
    for (auto [k, v] : w) edges.emplace_back(k.first, k.second, v);
    int best = crossing_weight(edges, partition_min_crossing(sg.items, edges, caps));

    Circuit c(sg.items);
    for (auto [a, b] : sg.gates) c.add(GateKind::CX, {a, b});
    const auto st = hotness_map(c, t);
    int hot = 0;
    for (auto [a, b] : sg.gates) hot += st.l2p[a].qpu != st.l2p[b].qpu;
    return std::min(best, hot);
}

}  // namespace

int RemoteEstimator::operator()(const InteractionGraph &g, const std::vector<bool> &cut) {
    const auto sg = segment_graph(g, cut);
    std::ostringstream key;
    key << sg.items << ':';
    for (auto [a, b] : sg.gates) key << a << ',' << b << ';';
    {
        std::lock_guard lock(mu_);
        auto it = cache_.find(key.str());
        if (it != cache_.end()) return it->second;
    }
    const int v = remote_for(sg, t_);
    std::lock_guard lock(mu_);
    cache_.emplace(key.str(), v);
    return v;
}

std::size_t RemoteEstimator::cache_size() const {
    std::lock_guard lock(mu_);
    return cache_.size();
}

int estimate_remote_gates(const InteractionGraph &g, const std::vector<bool> &cut, const DqcTopology &t) {
    return RemoteEstimator(t)(g, cut);
}

FilterResult filter_critical(const InteractionGraph &g, const CutSet &cuts, const DqcTopology &t,
                             RemoteEstimator *est) {
    RemoteEstimator local(t);
    RemoteEstimator &remote = est ? *est : local;
    FilterResult out;
    const std::size_t E = g.edges().size();
    out.remote_uncut = remote(g, std::vector<bool>(E, false));
    std::vector<int> all(cuts.wire_cuts);
    all.insert(all.end(), cuts.gate_cuts.begin(), cuts.gate_cuts.end());
    std::sort(all.begin(), all.end());
    if (all.empty()) return out;
    long total = 0;
    for (int e : all) {
        std::vector<bool> only(E, false);
        only[e] = true;
        CutMarginal m;
        m.edge = e;
        m.removed = out.remote_uncut - remote(g, only);
        total += m.removed;
        out.marginals.push_back(m);
    }
    out.average = static_cast<double>(total) / all.size();
    for (auto &m : out.marginals) {
        m.critical = static_cast<long>(m.removed) * static_cast<long>(all.size()) >= total;
        if (!m.critical) continue;
        (g.edges()[m.edge].kind == EdgeKind::Wire ? out.kept.wire_cuts : out.kept.gate_cuts).push_back(m.edge);
    }
    return out;
}

}  // namespace cutmap
