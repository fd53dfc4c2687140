// Routed-program replay used as an oracle for router soundness.
#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <random>

#include "cutmap/mapping.hpp"
#include "cutmap/sim.hpp"

namespace oracle {

using namespace cutmap;

inline Circuit random_circuit(int n, int gates, std::mt19937_64 &rng) {
    Circuit c(n);
    std::uniform_int_distribution<int> q(0, n - 1), kind(0, 5);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int i = 0; i < gates; ++i) {
        int a = q(rng), b = q(rng);
        while (b == a) b = q(rng);
        switch (kind(rng)) {
        case 0: c.add(GateKind::H, {a}); break;
        case 1: c.add(GateKind::RZ, {a}, {ang(rng)}); break;
        case 2: c.add(GateKind::RY, {a}, {ang(rng)}); break;
        case 3: c.add(GateKind::CX, {a, b}); break;
        case 4: c.add(GateKind::CP, {a, b}, {ang(rng)}); break;
        default: c.add(GateKind::CZ, {a, b}); break;
        }
    }
    return c;
}

// Replays the routed program on the physical slots it touches and checks, column by
// column, that it implements the logical unitary followed by the final relabelling.
inline double routing_error(const Circuit &c, const RoutedCircuit &r) {
    std::map<PhysQubit, int> slot;
    auto idx = [&](PhysQubit p) {
        auto it = slot.find(p);
        if (it != slot.end()) return it->second;
        int k = static_cast<int>(slot.size());
        slot[p] = k;
        return k;
    };
    const int n = c.num_qubits();
    for (int l = 0; l < n; ++l) idx(r.initial.l2p[l]);
    for (const auto &op : r.ops)
        if (op.kind != OpKind::EprOpen && op.kind != OpKind::EprClose)
            for (auto p : op.phys) idx(p);
    const int m = static_cast<int>(slot.size());
    double worst = 0;
    for (int col = 0; col < (1 << n); ++col) {
        Circuit prep(n);
        for (int l = 0; l < n; ++l)
            if (col >> l & 1) prep.add(GateKind::X, {l});
        StateVector ref(n);
        for (const auto &g : prep.gates()) ref.apply(g);
        for (const auto &g : c.gates()) ref.apply(g);

        StateVector phys(m);
        for (int l = 0; l < n; ++l)
            if (col >> l & 1) phys.apply(Gate{GateKind::X, {}, {idx(r.initial.l2p[l])}, 0});
        for (const auto &op : r.ops) {
            if (op.kind == OpKind::EprOpen || op.kind == OpKind::EprClose) continue;
            Gate g{op.kind == OpKind::Swap || op.kind == OpKind::RemoteSwap ? GateKind::SWAP : op.gate,
                   op.params, {}, 0};
            for (auto p : op.phys) g.qubits.push_back(idx(p));
            phys.apply(g);
        }
        for (std::size_t k = 0; k < ref.amplitudes().size(); ++k) {
            std::size_t pk = 0;
            for (int l = 0; l < n; ++l)
                if (k >> l & 1) pk |= std::size_t{1} << idx(r.final_state.l2p[l]);
            worst = std::max(worst, std::abs(ref.amplitudes()[k] - phys.amplitudes()[pk]));
        }
    }
    return worst;
}

}  // namespace oracle
