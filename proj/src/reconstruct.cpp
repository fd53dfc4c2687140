#include "cutmap/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "cutmap/interaction_graph.hpp"

namespace cutmap {

namespace {

std::string circuit_key(const Circuit &c) {
    std::ostringstream os;
    os << c.num_qubits() << '|' << std::setprecision(12);
    for (const auto &g : c.gates()) {
        os << static_cast<int>(g.kind);
        for (int q : g.qubits) os << ',' << q;
        for (double p : g.params) os << ':' << p;
        os << ';';
    }
    return os.str();
}

std::uint64_t fnv1a(const std::string &s, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Dense factor over discrete variables; the first scope variable varies slowest.
struct Factor {
    std::vector<int> scope;
    std::vector<int> dims;
    std::vector<double> table;
};

constexpr std::size_t kMaxFactorSize = 50'000'000;

std::size_t product(const std::vector<int> &dims) {
    std::size_t s = 1;
    for (int d : dims) {
        if (s > kMaxFactorSize / static_cast<std::size_t>(d))
            throw std::length_error("reconstruction factor too large; use fewer cuts");
        s *= d;
    }
    return s;
}

// Multiplies the factors and sums out `var`.
Factor eliminate(const std::vector<const Factor *> &fs, int var, const std::vector<int> &domain) {
    std::vector<int> scope;
    for (const auto *f : fs) scope.insert(scope.end(), f->scope.begin(), f->scope.end());
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    std::vector<int> dims;
    for (int v : scope) dims.push_back(domain[v]);
    const std::size_t total = product(dims);

    Factor out;
    for (std::size_t i = 0; i < scope.size(); ++i)
        if (scope[i] != var) {
            out.scope.push_back(scope[i]);
            out.dims.push_back(dims[i]);
        }
    out.table.assign(product(out.dims), 0.0);

    // strides of every input factor and of the output along the joint scope
    auto strides_for = [&](const std::vector<int> &fscope, const std::vector<int> &fdims) {
        std::vector<std::size_t> st(scope.size(), 0);
        std::size_t s = 1;
        for (int i = static_cast<int>(fscope.size()) - 1; i >= 0; --i) {
            const auto pos = std::lower_bound(scope.begin(), scope.end(), fscope[i]) - scope.begin();
            st[pos] = s;
            s *= fdims[i];
        }
        return st;
    };
    std::vector<std::vector<std::size_t>> in_strides;
    for (const auto *f : fs) in_strides.push_back(strides_for(f->scope, f->dims));
    const auto out_stride = strides_for(out.scope, out.dims);

    std::vector<int> idx(scope.size(), 0);
    std::vector<std::size_t> off(fs.size(), 0);
    std::size_t out_off = 0;
    for (std::size_t n = 0; n < total; ++n) {
        double v = 1.0;
        for (std::size_t k = 0; k < fs.size(); ++k) v *= fs[k]->table[off[k]];
        out.table[out_off] += v;
        for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i) {
            if (++idx[i] < dims[i]) {
                for (std::size_t k = 0; k < fs.size(); ++k) off[k] += in_strides[k][i];
                out_off += out_stride[i];
                break;
            }
            for (std::size_t k = 0; k < fs.size(); ++k) off[k] -= in_strides[k][i] * (dims[i] - 1);
            out_off -= out_stride[i] * (dims[i] - 1);
            idx[i] = 0;
        }
    }
    return out;
}

double contract_all(std::vector<Factor> factors, const std::vector<int> &domain) {
    std::vector<bool> alive(factors.size(), true);
    std::set<int> remaining;
    for (const auto &f : factors) remaining.insert(f.scope.begin(), f.scope.end());
    while (!remaining.empty()) {
        // min-degree variable, lowest id on ties
        int pick = -1;
        std::size_t best = 0;
        for (int v : remaining) {
            std::set<int> nb;
            for (std::size_t i = 0; i < factors.size(); ++i)
                if (alive[i] && std::binary_search(factors[i].scope.begin(), factors[i].scope.end(), v))
                    nb.insert(factors[i].scope.begin(), factors[i].scope.end());
            if (pick < 0 || nb.size() < best) pick = v, best = nb.size();
        }
        std::vector<const Factor *> touch;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (alive[i] && std::binary_search(factors[i].scope.begin(), factors[i].scope.end(), pick)) {
                touch.push_back(&factors[i]);
                alive[i] = false;
            }
        Factor f = eliminate(touch, pick, domain);
        factors.push_back(std::move(f));
        alive.push_back(true);
        remaining.erase(pick);
    }
    double v = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (alive[i]) v *= factors[i].table.at(0);
    return v;
}

}  // namespace

CutPlan::CutPlan(const Circuit &c, const CutLocations &cuts, std::string observable) {
    const int n = c.num_qubits();
    if (static_cast<int>(observable.size()) != n)
        throw std::invalid_argument("observable length " + std::to_string(observable.size()) +
                                    " does not match " + std::to_string(n) + " qubits");

    std::vector<int> occ_count(n, 0);
    for (const auto &g : c.gates())
        if (g.two_qubit())
            for (int q : g.qubits) ++occ_count[q];
    std::vector<std::set<int>> cut_after(n);
    for (const auto &w : cuts.wires) {
        if (w.qubit < 0 || w.qubit >= n || w.after_occurrence < 0 || w.after_occurrence + 1 >= occ_count[w.qubit])
            throw std::invalid_argument("wire cut on qubit " + std::to_string(w.qubit) + " after occurrence " +
                                        std::to_string(w.after_occurrence) + " is outside the circuit");
        cut_after[w.qubit].insert(w.after_occurrence);
    }
    std::set<int> gate_cut(cuts.gates.begin(), cuts.gates.end());
    for (int s : gate_cut) {
        if (s < 0 || s >= static_cast<int>(c.size()) || !c.gates()[s].two_qubit())
            throw std::invalid_argument("gate cut at seq " + std::to_string(s) + " is not a two-qubit gate");
        gate_cut_form(c.gates()[s]);  // rejects kinds without a decomposition
    }

    // segment ids
    std::vector<int> base(n + 1, 0);
    for (int q = 0; q < n; ++q) base[q + 1] = base[q] + static_cast<int>(cut_after[q].size()) + 1;
    const int num_seg = base[n];
    UnionFind uf(num_seg);
    {
        std::vector<int> occ(n, 0), seg(n, 0);
        for (const auto &g : c.gates()) {
            if (!g.two_qubit()) continue;
            for (int q : g.qubits) {
                if (occ[q] > 0 && cut_after[q].count(occ[q] - 1)) ++seg[q];
                ++occ[q];
            }
            if (!gate_cut.count(g.seq)) uf.unite(base[g.qubits[0]] + seg[g.qubits[0]], base[g.qubits[1]] + seg[g.qubits[1]]);
        }
    }
    std::vector<int> comp_of(num_seg, -1), local_of(num_seg, -1);
    for (int s = 0; s < num_seg; ++s) {
        const int r = uf.find(s);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<int>(comps_.size());
            comps_.emplace_back();
        }
        comp_of[s] = comp_of[r];
        local_of[s] = comps_[comp_of[s]].qubits++;
    }
    for (auto &k : comps_) k.observable.assign(k.qubits, 'I');
    for (int q = 0; q < n; ++q) {
        const int last = base[q + 1] - 1;
        comps_[comp_of[last]].observable[local_of[last]] = observable[q];
    }

    // ops in program order
    std::vector<int> occ(n, 0), seg(n, 0);
    std::map<std::pair<int, int>, int> wire_index;  // (qubit, after) -> index
    for (const auto &g : c.gates()) {
        if (g.two_qubit()) {
            for (int q : g.qubits) {
                if (occ[q] > 0 && cut_after[q].count(occ[q] - 1)) {
                    const int up = base[q] + seg[q], down = up + 1;
                    const int j = static_cast<int>(wires_.size());
                    wires_.push_back({q, comp_of[up], comp_of[down]});
                    wire_index[{q, occ[q] - 1}] = j;
                    Op m;
                    m.kind = Op::Measure;
                    m.cut = j;
                    m.local = local_of[up];
                    comps_[comp_of[up]].ops.push_back(m);
                    Op p;
                    p.kind = Op::Prepare;
                    p.cut = j;
                    p.local = local_of[down];
                    comps_[comp_of[down]].ops.push_back(p);
                    ++seg[q];
                }
                ++occ[q];
            }
        }
        std::vector<int> segs;
        for (int q : g.qubits) segs.push_back(base[q] + seg[q]);
        if (g.two_qubit() && gate_cut.count(g.seq)) {
            const int j = static_cast<int>(gates_.size());
            gates_.push_back({g.seq, gate_cut_form(g), {comp_of[segs[0]], comp_of[segs[1]]}});
            for (int side = 0; side < 2; ++side) {
                Op h;
                h.kind = Op::Half;
                h.cut = j;
                h.side = side;
                h.local = local_of[segs[side]];
                comps_[comp_of[segs[side]]].ops.push_back(h);
            }
            continue;
        }
        Op op;
        op.kind = Op::Gate;
        op.gate = g;
        for (std::size_t i = 0; i < g.qubits.size(); ++i) op.gate.qubits[i] = local_of[segs[i]];
        comps_[comp_of[segs[0]]].ops.push_back(op);
    }
    for (const auto &gc : gates_) channels_.push_back(gate_cut_channels(gc.form.theta));
    for (std::size_t j = 0; j < wires_.size(); ++j) {
        comps_[wires_[j].upstream_comp].wire_scope.push_back(static_cast<int>(j));
        if (wires_[j].downstream_comp != wires_[j].upstream_comp)
            comps_[wires_[j].downstream_comp].wire_scope.push_back(static_cast<int>(j));
    }
    for (std::size_t j = 0; j < gates_.size(); ++j) {
        comps_[gates_[j].comp[0]].gate_scope.push_back(static_cast<int>(j));
        if (gates_[j].comp[1] != gates_[j].comp[0]) comps_[gates_[j].comp[1]].gate_scope.push_back(static_cast<int>(j));
    }
}

std::vector<int> CutPlan::component_qubits() const {
    std::vector<int> v;
    for (const auto &k : comps_) v.push_back(k.qubits);
    return v;
}

std::vector<std::array<int, 3>> CutPlan::component_cut_ends() const {
    std::vector<std::array<int, 3>> out;
    for (const auto &k : comps_) {
        std::array<int, 3> e{0, 0, 0};
        for (const auto &op : k.ops) {
            if (op.kind == Op::Prepare) ++e[0];
            if (op.kind == Op::Measure) ++e[1];
            if (op.kind == Op::Half) ++e[2];
        }
        out.push_back(e);
    }
    return out;
}

ComponentCircuit CutPlan::build(int k, const std::vector<CutEndSetting> &settings) const {
    const auto &comp = comps_.at(k);
    ComponentCircuit out;
    out.circuit = Circuit(comp.qubits);
    out.observable = comp.observable;
    const int W = num_wire_cuts();
    for (const auto &op : comp.ops) {
        switch (op.kind) {
        case Op::Gate: out.circuit.add(op.gate.kind, op.gate.qubits, op.gate.params); break;
        case Op::Measure:
            out.signed_meas.push_back(append_measurement(out.circuit, op.local, settings.at(op.cut).basis));
            break;
        case Op::Prepare:
            out.circuit.add(GateKind::PREPARE, {op.local}, {static_cast<double>(settings.at(op.cut).prep)});
            break;
        case Op::Half:
            if (append_gate_half(out.circuit, op.local, gates_[op.cut].form, op.side,
                                 channels_[op.cut].at(settings.at(W + op.cut).channel).ops[op.side]))
                out.signed_meas.push_back(true);
            break;
        }
    }
    return out;
}

std::string CutPlan::structure_key(int k) const {
    const auto &comp = comps_[k];
    std::ostringstream os;
    os << comp.qubits << '|' << comp.observable << '|' << std::setprecision(12);
    for (const auto &op : comp.ops) {
        os << static_cast<int>(op.kind) << '@' << op.local;
        if (op.kind == Op::Gate) {
            os << 'g' << static_cast<int>(op.gate.kind);
            for (int q : op.gate.qubits) os << ',' << q;
            for (double p : op.gate.params) os << ':' << p;
        } else if (op.kind == Op::Half) {
            const auto &f = gates_[op.cut].form;
            os << 's' << op.side << 't' << f.theta;
            for (const auto &[kind, ps] : f.pre[op.side]) os << 'p' << static_cast<int>(kind) << (ps.empty() ? 0.0 : ps[0]);
            for (const auto &[kind, ps] : f.post[op.side]) os << 'q' << static_cast<int>(kind) << (ps.empty() ? 0.0 : ps[0]);
        }
        os << ';';
    }
    return os.str();
}

std::vector<int> CutPlan::result_owners(bool reuse, int max_shared) const {
    std::vector<int> owner(num_components());
    std::map<std::string, int> first;
    int shared = 0;
    for (int k = 0; k < num_components(); ++k) {
        owner[k] = k;
        if (!reuse) continue;
        auto [it, fresh] = first.try_emplace(structure_key(k), k);
        if (!fresh && shared < max_shared) {
            owner[k] = it->second;
            ++shared;
        }
    }
    return owner;
}

std::uint64_t CutPlan::executed_circuits(bool reuse, int max_shared) const {
    std::uint64_t total = 0;
    const auto ends = component_cut_ends();
    const auto owner = result_owners(reuse, max_shared);
    for (int k = 0; k < num_components(); ++k)
        if (owner[k] == k) total += ipow(4, ends[k][0]) * ipow(3, ends[k][1]) * ipow(5, ends[k][2]);
    return total;
}

ReconstructResult CutPlan::reconstruct(const ReconstructOptions &opt) const {
    const int W = num_wire_cuts(), G = num_gate_cuts();
    // variables: b_j = 2j, p_j = 2j+1 for wire cuts, 2W+j for gate cuts
    std::vector<int> domain(2 * W + G);
    for (int j = 0; j < W; ++j) domain[2 * j] = domain[2 * j + 1] = 4;
    for (int j = 0; j < G; ++j) domain[2 * W + j] = 6;

    std::vector<Factor> factors;
    for (int j = 0; j < W; ++j) {
        Factor f{{2 * j, 2 * j + 1}, {4, 4}, std::vector<double>(16)};
        for (int b = 0; b < 4; ++b)
            for (int p = 0; p < 4; ++p)
                f.table[b * 4 + p] = wire_cut_coefficient(static_cast<MeasBasis>(b), static_cast<PrepState>(p));
        factors.push_back(std::move(f));
    }
    for (int j = 0; j < G; ++j) {
        Factor f{{2 * W + j}, {6}, {}};
        for (const auto &ch : channels_[j]) f.table.push_back(ch.coeff);
        factors.push_back(std::move(f));
    }

    // component tables: collect every circuit first, evaluate the distinct ones, then fill
    struct Pending {
        std::size_t factor;
        std::size_t entry;
        std::string key;
    };
    std::vector<Pending> pending;
    std::map<std::string, ComponentCircuit> jobs;
    const auto owner = result_owners(opt.reuse, opt.max_shared);
    for (int k = 0; k < num_components(); ++k) {
        const auto &comp = comps_[k];
        Factor f;
        for (int j : comp.wire_scope) {
            if (wires_[j].upstream_comp == k) f.scope.push_back(2 * j);
            if (wires_[j].downstream_comp == k) f.scope.push_back(2 * j + 1);
        }
        for (int j : comp.gate_scope) f.scope.push_back(2 * W + j);
        std::sort(f.scope.begin(), f.scope.end());
        for (int v : f.scope) f.dims.push_back(domain[v]);
        const std::size_t size = product(f.dims);
        f.table.assign(size, 0.0);
        std::vector<CutEndSetting> settings(W + G);
        std::vector<int> idx(f.scope.size(), 0);
        for (std::size_t e = 0; e < size; ++e) {
            for (std::size_t i = 0; i < f.scope.size(); ++i) {
                const int v = f.scope[i];
                if (v >= 2 * W) settings[W + (v - 2 * W)].channel = idx[i];
                else if (v % 2 == 0) settings[v / 2].basis = static_cast<MeasBasis>(idx[i]);
                else settings[v / 2].prep = static_cast<PrepState>(idx[i]);
            }
            ComponentCircuit cc = build(k, settings);
            std::string key = circuit_key(cc.circuit) + '#' + cc.observable + '#';
            for (bool s : cc.signed_meas) key += s ? '1' : '0';
            key = std::to_string(owner[k]) + '/' + key;
            pending.push_back({factors.size(), e, key});
            jobs.try_emplace(key, std::move(cc));
            for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
                if (++idx[i] < f.dims[i]) break;
                idx[i] = 0;
            }
        }
        factors.push_back(std::move(f));
    }

    std::vector<std::pair<const std::string *, const ComponentCircuit *>> work;
    for (const auto &[key, cc] : jobs) work.push_back({&key, &cc});
    std::vector<double> values(work.size());
    BranchOptions bo;
    bo.max_branch_depth = opt.max_branch_depth;
    bo.max_qubits = opt.max_qubits;
    auto run = [&](std::size_t i) {
        const auto &cc = *work[i].second;
        double v = branch_eval(cc.circuit, cc.observable, cc.signed_meas, bo);
        if (opt.shots) {
            std::mt19937_64 rng(fnv1a(*work[i].first, opt.seed));
            std::binomial_distribution<int> draw(*opt.shots, std::clamp((1.0 + v) / 2.0, 0.0, 1.0));
            v = 2.0 * draw(rng) / *opt.shots - 1.0;
        }
        values[i] = v;
    };
    const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(work.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < work.size(); ++i) run(i);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr err;
        std::mutex mu;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < work.size(); i += threads) {
                    try {
                        run(i);
                    } catch (...) {
                        std::lock_guard lock(mu);
                        if (!err) err = std::current_exception();
                    }
                }
            });
        for (auto &th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }
    std::unordered_map<std::string, double> result;
    for (std::size_t i = 0; i < work.size(); ++i) result[*work[i].first] = values[i];
    for (const auto &p : pending) factors[p.factor].table[p.entry] = result.at(p.key);

    ReconstructResult out;
    out.value = contract_all(std::move(factors), domain);
    std::set<std::string> circuits;
    for (const auto &[key, cc] : jobs) circuits.insert(key.substr(0, key.find('/')) + circuit_key(cc.circuit));
    out.simulations = static_cast<long>(circuits.size());
    out.executed_circuits = executed_circuits(opt.reuse, opt.max_shared);
    return out;
}

BigInt CutPlan::variant_total() const {
    BigInt v = 1;
    for (int j = 0; j < num_wire_cuts(); ++j) v *= 16;
    for (int j = 0; j < num_gate_cuts(); ++j) v *= 6;
    return v;
}

void CutPlan::for_each_variant(const std::function<void(const Variant &)> &visit, std::uint64_t cap) const {
    if (variant_total() > cap)
        throw std::length_error("variant count " + format_big(variant_total()) + " exceeds the cap of " +
                                std::to_string(cap) + "; use fewer cuts");
    const int W = num_wire_cuts(), G = num_gate_cuts();
    std::vector<int> idx(W + G, 0);
    std::set<std::string> seen;
    const std::uint64_t total = static_cast<std::uint64_t>(variant_total());
    for (std::uint64_t n = 0; n < total; ++n) {
        Variant v;
        v.channels = idx;
        std::vector<CutEndSetting> settings(W + G);
        for (int j = 0; j < G; ++j) settings[W + j].channel = idx[W + j];
        for (int j = 0; j < W; ++j) {
            settings[j].basis = static_cast<MeasBasis>(idx[j] / 4);
            settings[j].prep = static_cast<PrepState>(idx[j] % 4);
            v.coefficient *= wire_cut_coefficient(settings[j].basis, settings[j].prep);
        }
        for (int j = 0; j < G; ++j) v.coefficient *= channels_[j][idx[W + j]].coeff;
        for (int k = 0; k < num_components(); ++k) {
            ComponentCircuit cc = build(k, settings);
            v.execute.push_back(seen.insert(std::to_string(k) + '/' + circuit_key(cc.circuit)).second);
            v.components.push_back(std::move(cc));
        }
        visit(v);
        for (int i = W + G - 1; i >= 0; --i) {
            if (++idx[i] < (i < W ? 16 : 6)) break;
            idx[i] = 0;
        }
    }
}

std::uint64_t CutPlan::distinct_settings(std::uint64_t cap) const {
    std::set<std::string> tuples;
    for_each_variant(
        [&](const Variant &v) {
            std::string key;
            for (const auto &cc : v.components) key += circuit_key(cc.circuit) + '&';
            tuples.insert(key);
        },
        cap);
    return tuples.size();
}

std::optional<double> ground_truth(const Circuit &c, const std::string &observable, int max_qubits) {
    if (c.num_qubits() > max_qubits) return std::nullopt;
    return expectation(simulate(c, max_qubits), observable);
}

ErrorReport error_report(double expectation, std::optional<double> truth) {
    ErrorReport r;
    r.expectation = expectation;
    r.ground_truth = truth;
    if (truth) r.absolute_error = std::abs(expectation - *truth);
    return r;
}

OverheadReport overheads(int k1, int k2, int s16, int s9, std::uint64_t executed) {
    OverheadReport r;
    r.postproc = postproc_overhead(k1, k2);
    r.sampling = sampling_overhead(s16, s9);
    r.executed_circuits = executed;
    return r;
}

}  // namespace cutmap
