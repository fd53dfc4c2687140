#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutmap/interaction_graph.hpp"
#include "cutmap/overheads.hpp"
#include "cutmap/topology.hpp"

namespace cutmap {

/// Which overhead the search compares right after the remote-gate item.
enum class CostOrder { PostprocFirst, SamplingFirst };

std::string cost_order_name(CostOrder o);
/// @throws std::invalid_argument for names other than postproc-first / sampling-first
CostOrder parse_cost_order(const std::string &name);

/// Overheads are kept as exponents: postproc = 4^k1 6^k2, sampling = 16^s16 9^s9.
struct CostTuple {
    int remote = 0;
    int k1 = 0, k2 = 0;
    int s16 = 0, s9 = 0;
    int depth = 0;

    BigInt postproc() const { return postproc_overhead(k1, k2); }
    BigInt sampling() const;
};

/// Lexicographic comparison; deeper candidates win the last item. Returns -1, 0 or 1.
int compare(const CostTuple &a, const CostTuple &b, CostOrder order);

struct CutSet {
    std::vector<int> wire_cuts;  // edge ids
    std::vector<int> gate_cuts;  // edge ids
    int k1() const { return static_cast<int>(wire_cuts.size()); }
    int k2() const { return static_cast<int>(gate_cuts.size()); }
    bool empty() const { return wire_cuts.empty() && gate_cuts.empty(); }
    std::vector<bool> as_vector(std::size_t num_edges) const;
};

CutSet cutset_from(const InteractionGraph &g, const std::vector<bool> &s);

struct SearchOptions {
    long budget = 200000;  // heap pops
    CostOrder order = CostOrder::PostprocFirst;
    std::vector<int> reused_supers;  // super nodes whose results come from another instance
    bool seed_with_dive = true;
};

struct CutSolution {
    std::vector<bool> s;
    CostTuple cost;
    CutSet cuts;
    long pops = 0;
    bool budget_exhausted = false;
    int largest_component = 0;  // qubits
};

class NoFeasibleCut : public std::runtime_error {
public:
    NoFeasibleCut() : std::runtime_error("no feasible cut within budget") {}
};

/// Best-first search over cut vectors for the cheapest set of cuts after which every
/// component fits the largest QPU.
/// @throws NoFeasibleCut when the search ends without a goal
CutSolution search_min_cost(const InteractionGraph &g, const DqcTopology &t, const SearchOptions &opt = {});

/// Qubit count (distinct qubit segments) of every component under the cut vector; edges
/// beyond s.size() are treated as cut. Super-node edges are never cut.
std::vector<int> component_qubits(const InteractionGraph &g, const std::vector<bool> &s);

/// Lower bound on remote gates when the circuit, with the given cuts applied, is spread
/// over the fewest QPUs that hold it. Thread-safe memoisation.
class RemoteEstimator {
public:
    explicit RemoteEstimator(const DqcTopology &t) : t_(t) {}
    int operator()(const InteractionGraph &g, const std::vector<bool> &cut);
    std::size_t cache_size() const;

private:
    const DqcTopology &t_;
    mutable std::mutex mu_;
    std::map<std::string, int> cache_;
};

int estimate_remote_gates(const InteractionGraph &g, const std::vector<bool> &cut, const DqcTopology &t);

struct CutMarginal {
    int edge = 0;
    int removed = 0;  // remote(no cuts) - remote(only this cut)
    bool critical = false;
};

struct FilterResult {
    CutSet kept;
    std::vector<CutMarginal> marginals;  // in edge-id order
    int remote_uncut = 0;
    double average = 0.0;
};

/// Keeps the cuts whose marginal remote-gate removal is at least the average. One pass.
FilterResult filter_critical(const InteractionGraph &g, const CutSet &cuts, const DqcTopology &t,
                             RemoteEstimator *est = nullptr);

/// Circuit coordinates of a wire cut: between this qubit's two-qubit occurrences
/// `after_occurrence` and `after_occurrence + 1`.
struct WireCutLocation {
    int qubit = 0;
    int after_occurrence = 0;
    auto operator<=>(const WireCutLocation &) const = default;
};

struct CutLocations {
    std::vector<WireCutLocation> wires;
    std::vector<int> gates;  // gate seq
};

CutLocations locate(const InteractionGraph &g, const CutSet &cuts);

}  // namespace cutmap
