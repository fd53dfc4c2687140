#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cutmap/hemicut.hpp"
#include "cutmap/json_io.hpp"
#include "cutmap/sim.hpp"

namespace cutmap {

enum ExitCode {
    kExitOk = 0,
    kExitUsage = 1,       // invalid configuration or input
    kExitInfeasible = 2,  // nothing to cut, no feasible cut, circuit too large for the system or simulator
    kExitBudget = 3,      // search budget ran out; the best solution found is still reported
};

struct RunConfig {
    // input: a builtin benchmark or a QASM file
    std::string bench;
    int qubits = 0;
    std::optional<std::uint64_t> bench_seed;
    std::string qasm_path;

    std::string topology = "manila-x20";  // preset name or JSON path

    bool reuse = false;   // search for isomorphic blocks and cut along them
    int reuse_count = 0;  // instances that take their results from another
    int restarts = 10;

    std::optional<int> shots;  // exact mode when unset
    std::uint64_t seed = 1;
    long budget = 200000;
    CostOrder order = CostOrder::PostprocFirst;
    std::string observable;  // all Z when empty
    bool no_cut = false;
    int threads = 1;
    int max_sim_qubits = kDefaultMaxSimQubits;

    std::string manifest_path;  // variant manifest output, run only
    std::string graph_path;     // DOT dump of the (contracted) interaction graph
    bool include_routes = false;
};

struct CommandResult {
    int exit_code = kExitOk;
    Json report;
};

/// Loads the configured circuit.
/// @throws std::invalid_argument for a missing or conflicting input
Circuit load_input(const RunConfig &cfg);

/// @throws std::invalid_argument for unusable settings
void validate(const RunConfig &cfg);

/// build_graph, optional contract_isomorphs, search_min_cost, filter_critical.
CommandResult cmd_cut(const RunConfig &cfg);

/// Placement policy choice and routing of the uncut circuit.
CommandResult cmd_map(const RunConfig &cfg);

/// Cut, map every component, evaluate the variants and reconstruct the expectation.
CommandResult cmd_run(const RunConfig &cfg);

}  // namespace cutmap
