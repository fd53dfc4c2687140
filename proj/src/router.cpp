#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "cutmap/mapping.hpp"

namespace cutmap {

namespace {

struct Session {
    int qpu = -1;  // QPU holding the shared copy
    int id = -1;
};

class Router {
public:
    Router(const Circuit &c, const MappingState &init, const DqcTopology &t, const RouteOptions &opt)
        : c_(c), t_(t), opt_(opt), l2p_(init.l2p), open_(c.num_qubits()) {
        const int n = c.num_qubits();
        if (static_cast<int>(l2p_.size()) != n)
            throw std::invalid_argument("initial mapping does not cover every logical qubit");
        for (const auto &q : t.qpus()) {
            p2l_.emplace_back(q.num_physical(), -1);
            time_.emplace_back(q.num_physical(), 0);
        }
        for (int l = 0; l < n; ++l) {
            const PhysQubit p = l2p_[l];
            if (p.qpu < 0 || p.qpu >= t.num_qpus() || p.index < 0 || p.index >= t.qpu(p.qpu).num_physical())
                throw std::invalid_argument("logical qubit " + std::to_string(l) + " is unplaced");
            if (t.qpu(p.qpu).role(p.index) != QubitRole::Data)
                throw std::invalid_argument("logical qubit " + std::to_string(l) + " sits on a comm qubit");
            if (p2l_[p.qpu][p.index] >= 0) throw std::invalid_argument("initial mapping is not injective");
            p2l_[p.qpu][p.index] = l;
        }
        on_qubit_.assign(n, {});
        for (std::size_t i = 0; i < c.gates().size(); ++i)
            for (int q : c.gates()[i].qubits) on_qubit_[q].push_back(static_cast<int>(i));
        pos_.assign(n, 0);
        for (const auto &q : t.qpus()) max_phys_ = std::max(max_phys_, q.num_physical());
        out_.initial = init;
    }

    RoutedCircuit run() {
        const std::size_t total = c_.gates().size();
        int stall = 0;
        std::optional<int> forced;
        std::pair<PhysQubit, PhysQubit> last_swap{{-1, -1}, {-1, -1}};
        while (executed_ < total) {
            bool progress = true;
            bool any = false;
            while (progress) {
                progress = false;
                for (int gi : front()) {
                    const Gate &g = c_.gates()[gi];
                    if (!g.two_qubit()) {
                        exec_local(gi);
                        progress = true;
                        continue;
                    }
                    const PhysQubit a = l2p_[g.qubits[0]], b = l2p_[g.qubits[1]];
                    if (a.qpu == b.qpu) {
                        if (t_.qpu(a.qpu).coupled(a.index, b.index)) {
                            exec_local(gi);
                            progress = true;
                        }
                        continue;
                    }
                    if (!served(g) && try_remote_swap(gi)) {
                        progress = true;
                        break;  // placement changed; rescan the front
                    }
                    exec_remote(gi);
                    progress = true;
                }
                any = any || progress;
            }
            if (any) {
                stall = 0;
                forced.reset();
            }
            if (executed_ >= total) break;

            auto f = front();
            if (stall >= 3 * max_phys_ || forced) {
                if (!forced) forced = f.front();
                forced_swap(*forced);
            } else {
                last_swap = best_swap(f, last_swap);
            }
            ++stall;
        }
        for (int l = 0; l < c_.num_qubits(); ++l) close(l);
        out_.final_state.l2p = l2p_;
        long depth = 0;
        for (const auto &v : time_)
            for (long x : v) depth = std::max(depth, x);
        out_.metrics.depth = depth;
        return std::move(out_);
    }

private:
    const Circuit &c_;
    const DqcTopology &t_;
    RouteOptions opt_;
    std::vector<PhysQubit> l2p_;
    std::vector<std::vector<int>> p2l_;
    std::vector<std::vector<long>> time_;
    std::vector<std::optional<Session>> open_;
    std::vector<std::vector<int>> on_qubit_;
    std::vector<std::size_t> pos_;
    std::size_t executed_ = 0;
    int next_session_ = 0;
    int max_phys_ = 0;
    RoutedCircuit out_;

    long &tm(PhysQubit p) { return time_[p.qpu][p.index]; }

    std::vector<int> front() const {
        std::set<int> f;
        for (int q = 0; q < c_.num_qubits(); ++q) {
            if (pos_[q] >= on_qubit_[q].size()) continue;
            const int gi = on_qubit_[q][pos_[q]];
            bool ready = true;
            for (int o : c_.gates()[gi].qubits)
                ready = ready && pos_[o] < on_qubit_[o].size() && on_qubit_[o][pos_[o]] == gi;
            if (ready) f.insert(gi);
        }
        return {f.begin(), f.end()};
    }

    void advance(int gi) {
        for (int q : c_.gates()[gi].qubits) ++pos_[q];
        ++executed_;
    }

    void close(int l) {
        if (!open_[l]) return;
        RoutedOp op;
        op.kind = OpKind::EprClose;
        op.phys = {l2p_[l]};
        op.logical = {l};
        op.session = open_[l]->id;
        out_.ops.push_back(op);
        open_[l].reset();
    }

    RoutedOp gate_op(int gi, OpKind kind) {
        const Gate &g = c_.gates()[gi];
        RoutedOp op;
        op.kind = kind;
        op.gate = g.kind;
        op.params = g.params;
        op.logical = g.qubits;
        op.source_seq = g.seq;
        for (int q : g.qubits) op.phys.push_back(l2p_[q]);
        return op;
    }

    void exec_local(int gi) {
        const Gate &g = c_.gates()[gi];
        for (int q : g.qubits) close(q);
        long start = 0;
        for (int q : g.qubits) start = std::max(start, tm(l2p_[q]));
        for (int q : g.qubits) tm(l2p_[q]) = start + 1;
        out_.ops.push_back(gate_op(gi, OpKind::Gate));
        advance(gi);
    }

    bool served(const Gate &g) const {
        const int a = g.qubits[0], b = g.qubits[1];
        return (open_[a] && open_[a]->qpu == l2p_[b].qpu) || (open_[b] && open_[b]->qpu == l2p_[a].qpu);
    }

    // Consecutive upcoming gates on l (from its next unexecuted gate) that are two-qubit
    // gates with a partner currently on `qpu`.
    int run_length(int l, int qpu) const {
        int k = 0;
        for (std::size_t i = pos_[l]; i < on_qubit_[l].size(); ++i) {
            const Gate &g = c_.gates()[on_qubit_[l][i]];
            if (!g.two_qubit()) break;
            const int other = g.qubits[0] == l ? g.qubits[1] : g.qubits[0];
            if (l2p_[other].qpu != qpu) break;
            ++k;
        }
        return k;
    }

    void exec_remote(int gi) {
        const Gate &g = c_.gates()[gi];
        const int a = g.qubits[0], b = g.qubits[1];
        const int qa = l2p_[a].qpu, qb = l2p_[b].qpu;
        int owner = -1;
        if (open_[a] && open_[a]->qpu == qb) owner = a;
        else if (open_[b] && open_[b]->qpu == qa) owner = b;
        long cost = 1;
        if (owner < 0) {
            close(a);
            close(b);
            owner = run_length(b, qa) > run_length(a, qb) ? b : a;
            const int target = owner == a ? qb : qa;
            const int hops = DqcTopology::qpu_distance(qa, qb);
            open_[owner] = Session{target, next_session_++};
            out_.metrics.epr_pairs += hops;
            RoutedOp op;
            op.kind = OpKind::EprOpen;
            op.phys = {l2p_[owner], PhysQubit{target, t_.qpu(target).comm().empty() ? 0 : t_.qpu(target).comm()[0]}};
            op.logical = {owner};
            op.session = open_[owner]->id;
            out_.ops.push_back(op);
            cost = static_cast<long>(t_.cost().remote_gate) * hops;
        } else {
            close(owner == a ? b : a);
        }
        const long start = std::max(tm(l2p_[a]), tm(l2p_[b]));
        tm(l2p_[a]) = tm(l2p_[b]) = start + cost;
        RoutedOp op = gate_op(gi, OpKind::RemoteGate);
        op.session = open_[owner]->id;
        out_.ops.push_back(op);
        ++out_.metrics.remote_gates;
        advance(gi);
    }

    // Cost model shared by the SWAP heuristic and the remote-SWAP lookahead: 3 per missing
    // SWAP on local pairs, remote_gate x hops per EPR session, sessions shared along runs.
    long sequence_cost(const std::vector<int> &gates, const std::vector<PhysQubit> &place,
                       std::vector<int> open_to) const {
        long cost = 0;
        for (int gi : gates) {
            const Gate &g = c_.gates()[gi];
            if (!g.two_qubit()) {
                open_to[g.qubits[0]] = -1;
                continue;
            }
            const int a = g.qubits[0], b = g.qubits[1];
            const PhysQubit pa = place[a], pb = place[b];
            if (pa.qpu == pb.qpu) {
                open_to[a] = open_to[b] = -1;
                cost += static_cast<long>(t_.cost().swap) * std::max(0, t_.qpu(pa.qpu).data_distance(pa.index, pb.index) - 1);
                continue;
            }
            if (open_to[a] == pb.qpu || open_to[b] == pa.qpu) {
                if (open_to[a] != pb.qpu) open_to[a] = -1;
                if (open_to[b] != pa.qpu) open_to[b] = -1;
                continue;
            }
            cost += static_cast<long>(t_.cost().remote_gate) * DqcTopology::qpu_distance(pa.qpu, pb.qpu);
            open_to[a] = pb.qpu;
            open_to[b] = pa.qpu;
        }
        return cost;
    }

    std::vector<int> current_open() const {
        std::vector<int> v(c_.num_qubits(), -1);
        for (int l = 0; l < c_.num_qubits(); ++l)
            if (open_[l]) v[l] = open_[l]->qpu;
        return v;
    }

    // The next `limit` unexecuted gates touching any of `qubits`, in program order.
    std::vector<int> upcoming(const std::vector<int> &qubits, int limit) const {
        std::set<int> s;
        for (int q : qubits)
            for (std::size_t i = pos_[q]; i < on_qubit_[q].size(); ++i) s.insert(on_qubit_[q][i]);
        std::vector<int> v(s.begin(), s.end());
        if (static_cast<int>(v.size()) > limit) v.resize(limit);
        return v;
    }

    bool try_remote_swap(int gi) {
        if (!opt_.allow_remote_swap) return false;
        const Gate &g = c_.gates()[gi];
        const int a = g.qubits[0], b = g.qubits[1];
        if (DqcTopology::qpu_distance(l2p_[a].qpu, l2p_[b].qpu) != 1) return false;
        const auto look = upcoming({a, b}, opt_.lookahead);
        const auto open_now = current_open();
        const long now = sequence_cost(look, l2p_, open_now);
        long best = now;
        int mover = -1;
        PhysQubit dest{};
        for (int m : {a, b}) {
            const int other = m == a ? b : a;
            const int qpu = l2p_[other].qpu;
            const Qpu &dev = t_.qpu(qpu);
            for (int p : dev.data()) {
                if (p2l_[qpu][p] >= 0) continue;
                auto place = l2p_;
                place[m] = {qpu, p};
                auto open = open_now;
                open[m] = -1;
                const long cost = t_.cost().remote_gate + sequence_cost(look, place, open);
                if (cost < best) best = cost, mover = m, dest = {qpu, p};
            }
        }
        if (mover < 0) return false;
        close(mover);
        const PhysQubit from = l2p_[mover];
        RoutedOp op;
        op.kind = OpKind::RemoteSwap;
        op.gate = GateKind::SWAP;
        op.phys = {from, dest};
        op.logical = {mover, -1};
        op.session = next_session_++;
        out_.ops.push_back(op);
        const long start = std::max(tm(from), tm(dest));
        tm(from) = tm(dest) = start + t_.cost().remote_gate + 2;
        p2l_[from.qpu][from.index] = -1;
        p2l_[dest.qpu][dest.index] = mover;
        l2p_[mover] = dest;
        ++out_.metrics.remote_swaps;
        out_.metrics.epr_pairs += 1;
        return true;
    }

    void do_swap(PhysQubit x, PhysQubit y) {
        const int lx = p2l_[x.qpu][x.index], ly = p2l_[y.qpu][y.index];
        if (lx >= 0) close(lx);
        if (ly >= 0) close(ly);
        RoutedOp op;
        op.kind = OpKind::Swap;
        op.gate = GateKind::SWAP;
        op.phys = {x, y};
        op.logical = {lx, ly};
        out_.ops.push_back(op);
        const long start = std::max(tm(x), tm(y));
        tm(x) = tm(y) = start + 3;
        p2l_[x.qpu][x.index] = ly;
        p2l_[y.qpu][y.index] = lx;
        if (lx >= 0) l2p_[lx] = y;
        if (ly >= 0) l2p_[ly] = x;
        ++out_.metrics.swaps;
    }

    std::vector<int> extended_set(const std::vector<int> &f) const {
        std::set<int> fs(f.begin(), f.end()), e;
        for (int gi : f)
            for (int q : c_.gates()[gi].qubits) {
                int taken = 0;
                for (std::size_t i = pos_[q]; i < on_qubit_[q].size() && taken < opt_.extended_cap; ++i) {
                    const int h = on_qubit_[q][i];
                    if (fs.count(h)) continue;
                    if (!c_.gates()[h].two_qubit()) break;
                    e.insert(h);
                    ++taken;
                }
            }
        return {e.begin(), e.end()};
    }

    std::pair<PhysQubit, PhysQubit> best_swap(const std::vector<int> &f, std::pair<PhysQubit, PhysQubit> last) {
        std::vector<int> blocked;
        for (int gi : f)
            if (c_.gates()[gi].two_qubit()) blocked.push_back(gi);
        const auto e = extended_set(blocked);
        std::set<std::pair<PhysQubit, PhysQubit>> cands;
        for (int gi : blocked)
            for (int q : c_.gates()[gi].qubits) {
                const PhysQubit p = l2p_[q];
                const Qpu &dev = t_.qpu(p.qpu);
                for (int nb : dev.neighbors(p.index)) {
                    if (dev.role(nb) != QubitRole::Data) continue;
                    PhysQubit x = p, y{p.qpu, nb};
                    if (y < x) std::swap(x, y);
                    cands.insert({x, y});
                }
            }
        if (cands.size() > 1) cands.erase(last);
        const auto open = current_open();
        double best = std::numeric_limits<double>::infinity();
        std::pair<PhysQubit, PhysQubit> pick;
        for (const auto &[x, y] : cands) {
            auto place = l2p_;
            const int lx = p2l_[x.qpu][x.index], ly = p2l_[y.qpu][y.index];
            auto o = open;
            if (lx >= 0) place[lx] = y, o[lx] = -1;
            if (ly >= 0) place[ly] = x, o[ly] = -1;
            double h = static_cast<double>(sequence_cost(blocked, place, o)) / blocked.size();
            if (!e.empty()) h += opt_.extended_weight * sequence_cost(e, place, o) / e.size();
            if (h < best) best = h, pick = {x, y};
        }
        do_swap(pick.first, pick.second);
        return pick;
    }

    // Moves operand 0 of the gate one step along a shortest data path toward operand 1.
    void forced_swap(int gi) {
        const Gate &g = c_.gates()[gi];
        const PhysQubit a = l2p_[g.qubits[0]], b = l2p_[g.qubits[1]];
        const Qpu &dev = t_.qpu(a.qpu);
        const int d = dev.data_distance(a.index, b.index);
        for (int nb : dev.neighbors(a.index)) {
            if (dev.role(nb) != QubitRole::Data) continue;
            if (dev.data_distance(nb, b.index) == d - 1) {
                do_swap(a, PhysQubit{a.qpu, nb});
                return;
            }
        }
        throw std::logic_error("no distance-reducing swap; data subgraph is disconnected");
    }
};

}  // namespace

RoutedCircuit route(const Circuit &c, const MappingState &init, const DqcTopology &t, const RouteOptions &opt) {
    return Router(c, init, t, opt).run();
}

}  // namespace cutmap
