// Command-line front end: cut, map and run subcommands over the pipeline.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cutmap/benchmarks.hpp"
#include "cutmap/pipeline.hpp"

using namespace cutmap;

namespace {

CLI::Option *add_common(CLI::App *app, RunConfig &cfg, std::string &order, std::string &out) {
    app->add_option("--bench", cfg.bench, "builtin benchmark: ghz, lc, bv, qft, qftcx, rca, hwea, spm");
    app->add_option("--qubits", cfg.qubits, "benchmark size");
    app->add_option("--bench-seed", cfg.bench_seed, "seed for bv hidden strings, hwea angles and spm layers");
    app->add_option("--qasm", cfg.qasm_path, "OpenQASM 2.0 input file")->check(CLI::ExistingFile);
    app->add_option("--topology", cfg.topology, "preset such as manila-x20, or a topology JSON file")
        ->capture_default_str();
    app->add_option("--seed", cfg.seed, "seed for restarts and shot sampling")->capture_default_str();
    app->add_option("--budget", cfg.budget, "search heap pops")->capture_default_str();
    app->add_option("--cost-order", order, "postproc-first or sampling-first")->capture_default_str();
    auto *reuse = app->add_option("--reuse", cfg.reuse_count,
                                  "cut along isomorphic blocks; n instances take their results from another");
    app->add_option("--restarts", cfg.restarts, "isomorph search restarts")->capture_default_str();
    app->add_option("--observable", cfg.observable, "Pauli string, one letter per qubit (default all Z)");
    app->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
    app->add_option("--out", out, "write the report here instead of stdout");
    app->add_option("--dump-graph", cfg.graph_path, "write the interaction graph as DOT");
    return reuse;
}

int emit(const CommandResult &r, const std::string &out) {
    const std::string text = r.report.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "error: cannot write " << out << "\n";
            return kExitUsage;
        }
        f << text;
    }
    if (r.report.contains("error")) std::cerr << "error: " << r.report["error"].get<std::string>() << "\n";
    return r.exit_code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Cut, reuse, map and reconstruct quantum circuits on a chain of QPUs"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string order = "postproc-first", out;
    bool exact = false, list = false;

    auto *cut = app.add_subcommand("cut", "search cuts and report the critical ones");
    auto *map = app.add_subcommand("map", "place and route the uncut circuit");
    auto *run = app.add_subcommand("run", "cut, map, evaluate the variants and reconstruct");
    auto *bench_list = app.add_subcommand("benchmarks", "list builtin benchmarks");
    bench_list->add_flag("--list", list);
    std::vector<CLI::Option *> reuse_opts;
    for (auto *sub : {cut, map, run}) reuse_opts.push_back(add_common(sub, cfg, order, out));
    map->add_flag("--routes", cfg.include_routes, "include the routed gate stream");
    run->add_flag("--routes", cfg.include_routes, "include the routed gate streams");
    auto *exact_flag = run->add_flag("--exact", exact, "exact expectation values (default)");
    run->add_option("--shots", cfg.shots, "sample each circuit this many times")->excludes(exact_flag);
    run->add_flag("--no-cut", cfg.no_cut, "skip cutting and map the whole circuit");
    run->add_option("--manifest", cfg.manifest_path, "write the variant manifest JSON");
    run->add_option("--max-sim-qubits", cfg.max_sim_qubits, "simulator limit")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (bench_list->parsed()) {
        for (const auto &n : bench::names()) std::cout << n << "\n";
        return kExitOk;
    }
    try {
        cfg.order = parse_cost_order(order);
        cfg.reuse = std::any_of(reuse_opts.begin(), reuse_opts.end(), [](const CLI::Option *o) { return o->count() > 0; });
        if (cut->parsed()) return emit(cmd_cut(cfg), out);
        if (map->parsed()) return emit(cmd_map(cfg), out);
        return emit(cmd_run(cfg), out);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
}
