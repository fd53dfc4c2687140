#include "cutmap/json_io.hpp"

#include <stdexcept>

#include "cutmap/qasm.hpp"

namespace cutmap {

Json big_to_json(const BigInt &v) {
    if (v >= 0 && v <= BigInt(1) << 53) return static_cast<std::uint64_t>(v);
    return v.str();
}

Json circuit_to_json(const Circuit &c) {
    Json gates = Json::array();
    for (const auto &g : c.gates())
        gates.push_back({{"name", std::string(gate_name(g.kind))}, {"qubits", g.qubits}, {"params", g.params},
                         {"seq", g.seq}});
    return {{"num_qubits", c.num_qubits()}, {"gates", gates}};
}

Circuit circuit_from_json(const Json &j) {
    try {
        Circuit c(j.at("num_qubits").get<int>());
        for (const auto &g : j.at("gates")) {
            const auto name = g.at("name").get<std::string>();
            auto kind = gate_kind_from_name(name);
            if (!kind) throw std::invalid_argument("unknown gate '" + name + "'");
            c.add(*kind, g.at("qubits").get<std::vector<int>>(),
                  g.contains("params") ? g.at("params").get<std::vector<double>>() : std::vector<double>{});
        }
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed circuit document: ") + e.what());
    }
}

Json cutset_to_json(const CutLocations &loc) {
    Json wires = Json::array();
    for (const auto &w : loc.wires) wires.push_back({{"qubit", w.qubit}, {"after_occurrence", w.after_occurrence}});
    const int k1 = static_cast<int>(loc.wires.size()), k2 = static_cast<int>(loc.gates.size());
    return {{"wire_cuts", wires},
            {"gate_cuts", loc.gates},
            {"k1", k1},
            {"k2", k2},
            {"postproc", big_to_json(postproc_overhead(k1, k2))},
            {"sampling", big_to_json(sampling_overhead(k1, k2))}};
}

Json marginals_to_json(const InteractionGraph &g, const FilterResult &f) {
    Json list = Json::array();
    for (const auto &m : f.marginals) {
        const auto &e = g.edges().at(m.edge);
        Json item{{"edge", m.edge}, {"kind", e.kind == EdgeKind::Wire ? "wire" : "gate"}};
        if (e.kind == EdgeKind::Wire) {
            item["qubit"] = e.qubit;
            item["after_occurrence"] = g.nodes()[e.a].occurrence;
        } else {
            item["gate_seq"] = e.gate_seq;
        }
        item["removed"] = m.removed;
        item["critical"] = m.critical;
        list.push_back(item);
    }
    return {{"remote_uncut", f.remote_uncut}, {"average", f.average}, {"cuts", list}};
}

Json iso_to_json(const IsoBlock &block, int reuse_count) {
    Json j{{"instances", block.instances.size()},
           {"boundary_edges", block.boundary_edge_count},
           {"reuse_count", reuse_count}};
    if (!block.empty()) {
        j["template"] = circuit_to_json(block.pattern)["gates"];
        j["restart"] = block.restart;
    }
    return j;
}

Json metrics_to_json(const RouteMetrics &m) {
    return {{"swaps", m.swaps},
            {"epr_pairs", m.epr_pairs},
            {"remote_gates", m.remote_gates},
            {"remote_swaps", m.remote_swaps},
            {"depth", m.depth}};
}

namespace {

const char *op_kind_name(OpKind k) {
    switch (k) {
    case OpKind::Gate: return "gate";
    case OpKind::Swap: return "swap";
    case OpKind::RemoteGate: return "remote_gate";
    case OpKind::RemoteSwap: return "remote_swap";
    case OpKind::EprOpen: return "epr_open";
    case OpKind::EprClose: return "epr_close";
    }
    return "?";
}

Json placement(const MappingState &m) {
    Json list = Json::array();
    for (const auto &p : m.l2p) list.push_back({p.qpu, p.index});
    return list;
}

}  // namespace

Json routed_to_json(const RoutedCircuit &r) {
    Json ops = Json::array();
    for (const auto &op : r.ops) {
        Json phys = Json::array();
        for (const auto &p : op.phys) phys.push_back({p.qpu, p.index});
        Json item{{"op", op_kind_name(op.kind)}};
        if (op.kind == OpKind::Gate || op.kind == OpKind::RemoteGate) {
            item["name"] = std::string(gate_name(op.gate));
            if (!op.params.empty()) item["params"] = op.params;
        }
        item["phys"] = phys;
        item["logical"] = op.logical;
        if (op.source_seq >= 0) item["seq"] = op.source_seq;
        if (op.session >= 0) item["session"] = op.session;
        ops.push_back(item);
    }
    return {{"initial", placement(r.initial)},
            {"final", placement(r.final_state)},
            {"metrics", metrics_to_json(r.metrics)},
            {"ops", ops}};
}

Json manifest_to_json(const CutPlan &plan, bool reuse, int max_shared, std::uint64_t cap) {
    const auto owner = plan.result_owners(reuse, max_shared);
    Json variants = Json::array();
    plan.for_each_variant(
        [&](const Variant &v) {
            Json comps = Json::array();
            for (std::size_t k = 0; k < v.components.size(); ++k) {
                const auto &cc = v.components[k];
                comps.push_back({{"component", k},
                                 {"qasm", to_qasm(cc.circuit)},
                                 {"observable", cc.observable},
                                 {"execute", v.execute[k] && owner[k] == static_cast<int>(k)},
                                 {"results_from", owner[k]}});
            }
            variants.push_back({{"channels", v.channels}, {"coefficient", v.coefficient}, {"components", comps}});
        },
        cap);
    return {{"schema_version", kReportSchemaVersion},
            {"wire_cuts", plan.num_wire_cuts()},
            {"gate_cuts", plan.num_gate_cuts()},
            {"components", plan.num_components()},
            {"variants", variants}};
}

}  // namespace cutmap
