#include "cutmap/mapping.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cutmap {

std::vector<int> profile(const Circuit &c) {
    std::vector<int> hot(c.num_qubits(), 0);
    for (const auto &g : c.gates())
        if (g.two_qubit()) {
            ++hot[g.qubits[0]];
            ++hot[g.qubits[1]];
        }
    return hot;
}

std::vector<WeightedEdge> interaction_edges(const Circuit &c) {
    std::map<std::pair<int, int>, int> w;
    for (const auto &g : c.gates())
        if (g.two_qubit()) {
            int a = std::min(g.qubits[0], g.qubits[1]), b = std::max(g.qubits[0], g.qubits[1]);
            ++w[{a, b}];
        }
    std::vector<WeightedEdge> out;
    for (auto [k, v] : w) out.emplace_back(k.first, k.second, v);
    return out;
}

std::vector<std::vector<double>> weakness_profile(const Circuit &c, const std::vector<int> &group_of,
                                                  int num_groups) {
    std::vector<std::vector<int>> count(num_groups, std::vector<int>(num_groups, 0));
    for (const auto &[a, b, w] : interaction_edges(c)) {
        int ga = group_of.at(a), gb = group_of.at(b);
        if (ga == gb) continue;
        count[ga][gb] += w;
        count[gb][ga] += w;
    }
    std::vector<std::vector<double>> weak(num_groups, std::vector<double>(num_groups, 0.0));
    for (int i = 0; i < num_groups; ++i)
        for (int j = 0; j < num_groups; ++j)
            weak[i][j] = count[i][j] ? 1.0 / count[i][j] : std::numeric_limits<double>::infinity();
    return weak;
}

int crossing_weight(const std::vector<WeightedEdge> &edges, const std::vector<int> &group_of) {
    int s = 0;
    for (const auto &[a, b, w] : edges)
        if (group_of[a] != group_of[b]) s += w;
    return s;
}

namespace {

struct ExactPartition {
    int n;
    const std::vector<int> &caps;
    std::vector<std::vector<std::pair<int, int>>> lower;  // neighbours with smaller index
    bool symmetric;
    std::vector<int> cur, best, load;
    int best_cost = std::numeric_limits<int>::max();

    void run(int i, int cost, int used) {
        if (cost >= best_cost) return;
        if (i == n) {
            best_cost = cost;
            best = cur;
            return;
        }
        const int groups = static_cast<int>(caps.size());
        const int limit = symmetric ? std::min(groups, used + 1) : groups;
        for (int g = 0; g < limit; ++g) {
            if (load[g] >= caps[g]) continue;
            int add = 0;
            for (auto [j, w] : lower[i])
                if (cur[j] != g) add += w;
            cur[i] = g;
            ++load[g];
            run(i + 1, cost + add, std::max(used, g + 1));
            --load[g];
        }
    }
};

std::vector<int> greedy_partition(int n, const std::vector<WeightedEdge> &edges, const std::vector<int> &caps) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (const auto &[a, b, w] : edges) {
        adj[a].push_back({b, w});
        adj[b].push_back({a, w});
    }
    std::vector<int> deg(n, 0);
    for (int i = 0; i < n; ++i)
        for (auto [j, w] : adj[i]) deg[i] += w;
    // Fill groups in order, always taking the unassigned item most attached to the group.
    std::vector<int> group(n, -1);
    int placed = 0;
    for (std::size_t g = 0; g < caps.size() && placed < n; ++g) {
        std::vector<int> attach(n, 0);
        for (int k = 0; k < caps[g] && placed < n; ++k) {
            int pick = -1;
            for (int i = 0; i < n; ++i) {
                if (group[i] >= 0) continue;
                if (pick < 0 || attach[i] > attach[pick] ||
                    (attach[i] == attach[pick] && (k == 0 ? deg[i] > deg[pick] : false)))
                    pick = i;
            }
            group[pick] = static_cast<int>(g);
            ++placed;
            for (auto [j, w] : adj[pick]) attach[j] += w;
        }
    }
    if (placed < n) throw std::invalid_argument("partition capacities are too small");

    // Pairwise exchange and single-move refinement.
    const int G = static_cast<int>(caps.size());
    std::vector<int> load(G, 0);
    for (int i = 0; i < n; ++i) ++load[group[i]];
    std::map<std::pair<int, int>, int> wmap;
    for (const auto &[a, b, w] : edges) wmap[{std::min(a, b), std::max(a, b)}] += w;
    auto wij = [&](int i, int j) {
        auto it = wmap.find({std::min(i, j), std::max(i, j)});
        return it == wmap.end() ? 0 : it->second;
    };
    std::vector<std::vector<int>> to(n, std::vector<int>(G, 0));
    for (int i = 0; i < n; ++i)
        for (auto [j, w] : adj[i]) to[i][group[j]] += w;
    for (int pass = 0; pass < 100; ++pass) {
        int best_gain = 0, bi = -1, bj = -1, bg = -1;
        for (int i = 0; i < n; ++i) {
            const int a = group[i];
            for (int g = 0; g < G; ++g) {
                if (g == a || load[g] >= caps[g]) continue;
                int gain = to[i][g] - to[i][a];
                if (gain > best_gain) best_gain = gain, bi = i, bj = -1, bg = g;
            }
            for (int j = i + 1; j < n; ++j) {
                const int b = group[j];
                if (a == b) continue;
                int gain = to[i][b] - to[i][a] + to[j][a] - to[j][b] - 2 * wij(i, j);
                if (gain > best_gain) best_gain = gain, bi = i, bj = j, bg = -1;
            }
        }
        if (best_gain <= 0) break;
        auto move = [&](int i, int g) {
            const int a = group[i];
            for (auto [j, w] : adj[i]) {
                to[j][a] -= w;
                to[j][g] += w;
            }
            --load[a];
            ++load[g];
            group[i] = g;
        };
        if (bj < 0) {
            move(bi, bg);
        } else {
            int a = group[bi], b = group[bj];
            move(bi, b);
            move(bj, a);
        }
    }
    return group;
}

}  // namespace

std::vector<int> partition_min_crossing(int n, const std::vector<WeightedEdge> &edges,
                                        const std::vector<int> &caps, int exact_limit) {
    if (n == 0) return {};
    if (std::accumulate(caps.begin(), caps.end(), 0) < n)
        throw std::invalid_argument("partition capacities are too small");
    if (n > exact_limit) return greedy_partition(n, edges, caps);
    const bool symmetric = std::all_of(caps.begin(), caps.end(), [&](int c) { return c == caps[0]; });
    ExactPartition ex{n, caps, std::vector<std::vector<std::pair<int, int>>>(n), symmetric,
                      std::vector<int>(n, -1), {}, std::vector<int>(caps.size(), 0)};
    for (const auto &[a, b, w] : edges) {
        if (a == b) continue;
        ex.lower[std::max(a, b)].push_back({std::min(a, b), w});
    }
    ex.run(0, 0, 0);
    return ex.best;
}

namespace {

void check_capacity(const Circuit &c, const DqcTopology &t) {
    if (c.num_qubits() > t.total_capacity())
        throw std::invalid_argument("circuit needs " + std::to_string(c.num_qubits()) +
                                    " data qubits, topology offers " + std::to_string(t.total_capacity()));
}

std::vector<std::vector<int>> pair_counts(const Circuit &c) {
    std::vector<std::vector<int>> m(c.num_qubits(), std::vector<int>(c.num_qubits(), 0));
    for (const auto &g : c.gates())
        if (g.two_qubit()) {
            ++m[g.qubits[0]][g.qubits[1]];
            ++m[g.qubits[1]][g.qubits[0]];
        }
    return m;
}

// Tracks free data qubits and picks positions by reliability rules.
class Placer {
public:
    Placer(const Circuit &c, const DqcTopology &t) : t_(t), count_(pair_counts(c)) {
        st_.l2p.assign(c.num_qubits(), PhysQubit{-1, -1});
        for (const auto &q : t.qpus()) used_.emplace_back(q.num_physical(), false);
    }

    bool mapped(int q) const { return st_.l2p[q].qpu >= 0; }
    int free_count(int qpu) const {
        int k = 0;
        for (int p : t_.qpu(qpu).data()) k += !used_[qpu][p];
        return k;
    }

    // Free data qubit on `qpu` scoring best under: optional comm-distance first, then the
    // weighted path reliability to mapped partners, then degree x average reliability.
    void place(int q, int qpu, bool near_comm) {
        const Qpu &dev = t_.qpu(qpu);
        int best = -1;
        std::tuple<int, double, double, int> best_key;
        for (int p : dev.data()) {
            if (used_[qpu][p]) continue;
            double rel = 0;
            for (std::size_t o = 0; o < count_[q].size(); ++o) {
                if (!count_[q][o] || !mapped(static_cast<int>(o)) || st_.l2p[o].qpu != qpu) continue;
                rel += count_[q][o] * dev.path_reliability(p, st_.l2p[o].index);
            }
            double quality = dev.data_degree(p) * dev.avg_reliability(p);
            auto key = std::tuple(near_comm ? dev.comm_distance(p) : 0, -rel, -quality, p);
            if (best < 0 || key < best_key) best = p, best_key = key;
        }
        if (best < 0) throw std::logic_error("no free data qubit on qpu " + std::to_string(qpu));
        used_[qpu][best] = true;
        st_.l2p[q] = {qpu, best};
    }

    MappingState take() { return std::move(st_); }
    const std::vector<std::vector<int>> &counts() const { return count_; }

private:
    const DqcTopology &t_;
    std::vector<std::vector<int>> count_;
    std::vector<std::vector<bool>> used_;
    MappingState st_;
};

}  // namespace

MappingState hotness_map(const Circuit &c, const DqcTopology &t) {
    check_capacity(c, t);
    Placer pl(c, t);
    const auto hot = profile(c);
    std::vector<int> order(c.num_qubits());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return hot[a] > hot[b]; });
    int cur = 0;
    auto put = [&](int q) {
        while (pl.free_count(cur) == 0) ++cur;
        pl.place(q, cur, false);
    };
    for (int q : order) {
        if (pl.mapped(q)) continue;
        put(q);
        std::vector<int> partners;
        for (int o = 0; o < c.num_qubits(); ++o)
            if (pl.counts()[q][o] && !pl.mapped(o)) partners.push_back(o);
        std::stable_sort(partners.begin(), partners.end(),
                         [&](int a, int b) { return pl.counts()[q][a] > pl.counts()[q][b]; });
        for (int o : partners) put(o);
    }
    return pl.take();
}

MappingState weakness_map(const Circuit &c, const DqcTopology &t) {
    check_capacity(c, t);
    const int n = c.num_qubits();
    std::vector<int> caps;
    for (int sum = 0, i = 0; sum < n; ++i) {
        caps.push_back(t.qpu(i).data().size());
        sum += caps.back();
    }
    const auto edges = interaction_edges(c);
    std::vector<int> group = partition_min_crossing(n, edges, caps);
    const int G = static_cast<int>(caps.size());

    // Order groups along the chain to minimise hop-weighted crossing when capacities allow.
    if (G > 1 && G <= 7 && std::all_of(caps.begin(), caps.end(), [&](int x) { return x == caps[0]; })) {
        std::vector<int> perm(G), best_perm;
        std::iota(perm.begin(), perm.end(), 0);
        long best = -1;
        do {
            long cost = 0;
            for (const auto &[a, b, w] : edges) cost += static_cast<long>(w) * std::abs(perm[group[a]] - perm[group[b]]);
            if (best < 0 || cost < best) best = cost, best_perm = perm;
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (int &g : group) g = best_perm[g];
    }

    std::vector<int> inter(n, 0);
    for (const auto &[a, b, w] : edges)
        if (group[a] != group[b]) inter[a] += w, inter[b] += w;
    const auto hot = profile(c);
    Placer pl(c, t);
    for (int g = 0; g < G; ++g) {
        std::vector<int> members;
        for (int q = 0; q < n; ++q)
            if (group[q] == g) members.push_back(q);
        std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
            return std::tuple(-inter[a], -hot[a]) < std::tuple(-inter[b], -hot[b]);
        });
        for (int q : members) pl.place(q, g, inter[q] > 0);
    }
    return pl.take();
}

std::string policy_name(Policy p) { return p == Policy::Hotness ? "hotness" : "weakness"; }

PolicyChoice choose_policy(const Circuit &c, const DqcTopology &t, const RouteOptions &opt) {
    PolicyChoice out;
    MappingState h = hotness_map(c, t), w = weakness_map(c, t);
    out.epr_hotness = route(c, h, t, opt).metrics.epr_pairs;
    out.epr_weakness = route(c, w, t, opt).metrics.epr_pairs;
    if (out.epr_weakness < out.epr_hotness) {
        out.policy = Policy::Weakness;
        out.state = std::move(w);
    } else {
        out.policy = Policy::Hotness;
        out.state = std::move(h);
    }
    return out;
}

RouteMetrics metrics(const RoutedCircuit &r) { return r.metrics; }

}  // namespace cutmap
