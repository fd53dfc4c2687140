#include "cutmap/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cutmap/benchmarks.hpp"
#include "cutmap/interaction_graph.hpp"
#include "cutmap/iso_reuse.hpp"
#include "cutmap/mapping.hpp"
#include "cutmap/qasm.hpp"
#include "cutmap/reconstruct.hpp"

namespace cutmap {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

Json header(const RunConfig &cfg, const std::string &command, const Circuit &c, const DqcTopology &t) {
    Json input;
    if (!cfg.bench.empty()) {
        input["bench"] = cfg.bench;
        input["qubits"] = cfg.qubits;
        if (cfg.bench_seed) input["bench_seed"] = *cfg.bench_seed;
    } else {
        input["qasm"] = cfg.qasm_path;
    }
    input["num_qubits"] = c.num_qubits();
    input["num_gates"] = c.gates().size();
    input["two_qubit_gates"] = two_qubit_gates(c).size();
    return {{"schema_version", kReportSchemaVersion},
            {"command", command},
            {"input", input},
            {"topology", {{"name", t.name()}, {"qpus", t.num_qpus()}, {"max_capacity", t.max_capacity()}, {"total_capacity", t.total_capacity()}}},
            {"seed", cfg.seed}};
}

CommandResult failure(Json report, int code, const std::string &message) {
    report["error"] = message;
    return {code, std::move(report)};
}

std::string observable_for(const RunConfig &cfg, const Circuit &c) {
    return cfg.observable.empty() ? std::string(c.num_qubits(), 'Z') : cfg.observable;
}

// Everything cmd_cut computes, kept for cmd_run.
struct CutStage {
    InteractionGraph graph;
    IsoBlock block;
    CutSolution solution;
    CutSet used;
    CutLocations locations;
    int s16 = 0, s9 = 0;
    Json json;
};

CutStage run_cut(const RunConfig &cfg, const Circuit &c, const DqcTopology &t, Json &timings) {
    CutStage st;
    auto t0 = Clock::now();
    InteractionGraph g = build_graph(c);
    timings["graph_ms"] = ms_since(t0);

    Json iso = nullptr;
    SearchOptions so;
    so.budget = cfg.budget;
    so.order = cfg.order;
    if (cfg.reuse) {
        t0 = Clock::now();
        st.block = find_isomorphs(g, c, t.max_capacity(), {cfg.restarts, cfg.reuse_count}, cfg.seed);
        timings["isomorph_ms"] = ms_since(t0);
        if (!st.block.empty()) {
            so.reused_supers = reused_supers(st.block, cfg.reuse_count);
            st.graph = contract_isomorphs(g, st.block);
        } else {
            st.graph = g;
        }
        iso = iso_to_json(st.block, st.block.empty() ? 0 : cfg.reuse_count);
    } else {
        st.graph = g;
    }
    if (!cfg.graph_path.empty()) write_file(cfg.graph_path, to_dot(st.graph));

    t0 = Clock::now();
    st.solution = search_min_cost(st.graph, t, so);
    timings["search_ms"] = ms_since(t0);

    // cutting along isomorphic blocks keeps every cut so the pieces stay identical
    Json marginals = nullptr;
    if (cfg.reuse && !st.block.empty()) {
        st.used = st.solution.cuts;
        st.s16 = st.solution.cost.s16;
        st.s9 = st.solution.cost.s9;
    } else {
        t0 = Clock::now();
        auto f = filter_critical(st.graph, st.solution.cuts, t);
        timings["filter_ms"] = ms_since(t0);
        st.used = f.kept;
        st.s16 = st.used.k1();
        st.s9 = st.used.k2();
        marginals = marginals_to_json(st.graph, f);
    }
    st.locations = locate(st.graph, st.used);

    const auto &cost = st.solution.cost;
    Json search{{"k1", st.solution.cuts.k1()},
                {"k2", st.solution.cuts.k2()},
                {"cost",
                 {{"remote", cost.remote},
                  {"postproc", big_to_json(cost.postproc())},
                  {"sampling", big_to_json(cost.sampling())},
                  {"depth", cost.depth}}},
                {"cost_order", cost_order_name(cfg.order)},
                {"largest_component", st.solution.largest_component},
                {"pops", st.solution.pops},
                {"budget", cfg.budget},
                {"budget_exhausted", st.solution.budget_exhausted}};
    st.json = {{"search", search}, {"cuts", cutset_to_json(st.locations)}, {"marginals", marginals}, {"isomorphs", iso}};
    return st;
}

Json overheads_json(const CutStage &st, std::uint64_t executed) {
    auto o = overheads(st.used.k1(), st.used.k2(), st.s16, st.s9, executed);
    return {{"postproc", big_to_json(o.postproc)},
            {"postproc_log10", log10_big(o.postproc)},
            {"sampling", big_to_json(o.sampling)},
            {"sampling_log10", log10_big(o.sampling)},
            {"executed_circuits", o.executed_circuits}};
}

int reuse_limit(const RunConfig &cfg, const CutStage &st) {
    return cfg.reuse && !st.block.empty() ? cfg.reuse_count : 0;
}

Json route_json(const RunConfig &cfg, const Circuit &c, const DqcTopology &t) {
    auto choice = choose_policy(c, t);
    auto routed = route(c, choice.state, t);
    Json j{{"qubits", c.num_qubits()},
           {"policy", policy_name(choice.policy)},
           {"epr_hotness", choice.epr_hotness},
           {"epr_weakness", choice.epr_weakness},
           {"metrics", metrics_to_json(routed.metrics)}};
    if (cfg.include_routes) j["routed"] = routed_to_json(routed);
    return j;
}

}  // namespace

Circuit load_input(const RunConfig &cfg) {
    if (cfg.bench.empty() == cfg.qasm_path.empty())
        throw std::invalid_argument("give exactly one of a benchmark name or a QASM file");
    if (!cfg.qasm_path.empty()) return parse_qasm(read_file(cfg.qasm_path));
    return bench::make_benchmark(cfg.bench, cfg.qubits, cfg.bench_seed);
}

void validate(const RunConfig &cfg) {
    if (cfg.budget < 1) throw std::invalid_argument("budget must be at least 1");
    if (cfg.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
    if (cfg.reuse_count < 0) throw std::invalid_argument("reuse count must be non-negative");
    if (cfg.reuse_count > 0 && !cfg.reuse) throw std::invalid_argument("a reuse count needs reuse enabled");
    if (cfg.shots && *cfg.shots < 1) throw std::invalid_argument("shots must be at least 1");
    if (cfg.threads < 1) throw std::invalid_argument("threads must be at least 1");
    if (cfg.max_sim_qubits < 1) throw std::invalid_argument("max simulator qubits must be at least 1");
    for (char ch : cfg.observable)
        if (std::string_view("IXYZ").find(ch) == std::string_view::npos)
            throw std::invalid_argument("observable letters must be I, X, Y or Z");
}

CommandResult cmd_cut(const RunConfig &cfg) {
    validate(cfg);
    const Circuit c = load_input(cfg);
    const DqcTopology t = resolve_topology(cfg.topology);
    Json report = header(cfg, "cut", c, t);
    Json timings;
    try {
        auto st = run_cut(cfg, c, t, timings);
        for (auto &[k, v] : st.json.items()) report[k] = v;
        CutPlan plan(c, st.locations, observable_for(cfg, c));
        report["components"] = plan.component_qubits();
        report["overheads"] = overheads_json(st, plan.executed_circuits(reuse_limit(cfg, st) > 0, reuse_limit(cfg, st)));
        report["timings"] = timings;
        return {st.solution.budget_exhausted ? kExitBudget : kExitOk, report};
    } catch (const NothingToCut &e) {
        return failure(report, kExitInfeasible, e.what());
    } catch (const NoFeasibleCut &e) {
        return failure(report, kExitInfeasible, e.what());
    }
}

CommandResult cmd_map(const RunConfig &cfg) {
    validate(cfg);
    const Circuit c = load_input(cfg);
    const DqcTopology t = resolve_topology(cfg.topology);
    Json report = header(cfg, "map", c, t);
    if (c.num_qubits() > t.total_capacity())
        return failure(report, kExitInfeasible,
                       "circuit needs " + std::to_string(c.num_qubits()) + " qubits, the system holds " +
                           std::to_string(t.total_capacity()));
    auto t0 = Clock::now();
    report["mapping"] = route_json(cfg, c, t);
    report["timings"] = {{"map_ms", ms_since(t0)}};
    return {kExitOk, report};
}

CommandResult cmd_run(const RunConfig &cfg) {
    validate(cfg);
    const Circuit c = load_input(cfg);
    const DqcTopology t = resolve_topology(cfg.topology);
    Json report = header(cfg, "run", c, t);
    const std::string obs = observable_for(cfg, c);
    if (static_cast<int>(obs.size()) != c.num_qubits())
        return failure(report, kExitUsage, "observable length differs from the qubit count");
    report["observable"] = obs;
    report["mode"] = cfg.shots ? "shots" : "exact";
    if (cfg.shots) report["shots"] = *cfg.shots;
    Json timings;

    CutStage st;
    int exit_code = kExitOk;
    if (cfg.no_cut) {
        if (c.num_qubits() > t.total_capacity())
            return failure(report, kExitInfeasible, "circuit does not fit the system");
        st.json = {{"cuts", cutset_to_json({})}};
    } else {
        try {
            st = run_cut(cfg, c, t, timings);
        } catch (const NothingToCut &e) {
            return failure(report, kExitInfeasible, e.what());
        } catch (const NoFeasibleCut &e) {
            return failure(report, kExitInfeasible, e.what());
        }
        if (st.solution.budget_exhausted) exit_code = kExitBudget;
    }
    for (auto &[k, v] : st.json.items()) report[k] = v;

    CutPlan plan(c, st.locations, obs);
    const auto sizes = plan.component_qubits();
    report["components"] = sizes;

    // each component runs as its own job on the whole system
    auto t0 = Clock::now();
    Json mapping = Json::array();
    RouteMetrics total;
    const std::vector<CutEndSetting> defaults(plan.num_wire_cuts() + plan.num_gate_cuts());
    for (int k = 0; k < plan.num_components(); ++k) {
        const Circuit comp = plan.build(k, defaults).circuit;
        if (comp.num_qubits() > t.total_capacity())
            return failure(report, kExitInfeasible, "component " + std::to_string(k) + " does not fit the system");
        Json m = route_json(cfg, comp, t);
        total.swaps += m["metrics"]["swaps"].get<int>();
        total.epr_pairs += m["metrics"]["epr_pairs"].get<int>();
        total.remote_gates += m["metrics"]["remote_gates"].get<int>();
        total.remote_swaps += m["metrics"]["remote_swaps"].get<int>();
        total.depth = std::max(total.depth, m["metrics"]["depth"].get<long>());
        mapping.push_back(m);
    }
    timings["map_ms"] = ms_since(t0);
    report["mapping"] = {{"total", metrics_to_json(total)}, {"components", mapping}};

    for (int q : sizes)
        if (q > cfg.max_sim_qubits)
            return failure(report, kExitInfeasible,
                           "a component has " + std::to_string(q) + " qubits, above the simulator limit of " +
                               std::to_string(cfg.max_sim_qubits));

    const int shared = reuse_limit(cfg, st);
    if (!cfg.manifest_path.empty()) write_file(cfg.manifest_path, manifest_to_json(plan, shared > 0, shared).dump(1));

    ReconstructOptions ro;
    ro.reuse = shared > 0;
    ro.max_shared = shared;
    ro.shots = cfg.shots;
    ro.seed = cfg.seed;
    ro.threads = cfg.threads;
    ro.max_qubits = cfg.max_sim_qubits;
    t0 = Clock::now();
    const auto result = plan.reconstruct(ro);
    timings["reconstruct_ms"] = ms_since(t0);
    t0 = Clock::now();
    const auto err = error_report(result.value, ground_truth(c, obs, cfg.max_sim_qubits));
    timings["ground_truth_ms"] = ms_since(t0);

    report["overheads"] = overheads_json(st, result.executed_circuits);
    report["simulations"] = result.simulations;
    report["expectation"] = err.expectation;
    report["ground_truth"] = err.ground_truth ? Json(*err.ground_truth) : Json(nullptr);
    report["absolute_error"] = err.absolute_error ? Json(*err.absolute_error) : Json(nullptr);
    report["timings"] = timings;
    return {exit_code, report};
}

}  // namespace cutmap
