#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cutmap/circuit.hpp"
#include "cutmap/hemicut.hpp"
#include "cutmap/overheads.hpp"
#include "cutmap/qpd.hpp"
#include "cutmap/sim.hpp"

namespace cutmap {

inline constexpr std::uint64_t kDefaultVariantCap = 10'000'000;

struct ReconstructOptions {
    bool reuse = false;          // share results between identical component circuits
    int max_shared = std::numeric_limits<int>::max();  // components allowed to reuse another's results
    std::optional<int> shots;    // exact evaluation when unset
    std::uint64_t seed = 1;
    int max_qubits = kDefaultMaxSimQubits;
    int max_branch_depth = 8;
    int threads = 1;
};

struct ReconstructResult {
    double value = 0.0;
    long simulations = 0;                // component circuits actually evaluated
    std::uint64_t executed_circuits = 0; // sum over executed components of their settings
};

/// Local instruction for one cut end inside a component circuit.
struct CutEndSetting {
    MeasBasis basis = MeasBasis::Z;   // upstream end of a wire cut
    PrepState prep = PrepState::Zero; // downstream end of a wire cut
    int channel = 0;                  // gate cut: index into gate_cut_channels
};

/// One executable component circuit with its observable fragment.
struct ComponentCircuit {
    Circuit circuit;
    std::string observable;
    std::vector<bool> signed_meas;
};

/// A variant of the full product: one (basis, prep) pair per wire cut (16, six of them with
/// zero weight) and one channel per gate cut.
struct Variant {
    std::vector<int> channels;  // wire cuts first (basis * 4 + prep), then gate cuts
    double coefficient = 1.0;
    std::vector<ComponentCircuit> components;
    std::vector<bool> execute;  // false when an identical component circuit came earlier
};

/// The circuit split at its cuts: qubit segments, connected components, and the factor
/// structure used to recombine component results.
class CutPlan {
public:
    /// @throws std::invalid_argument for a cut location outside the circuit or a gate cut
    /// on a kind without a cut decomposition
    CutPlan(const Circuit &c, const CutLocations &cuts, std::string observable);

    int num_components() const { return static_cast<int>(comps_.size()); }
    /// Qubits (segments) of each component.
    std::vector<int> component_qubits() const;
    int num_wire_cuts() const { return static_cast<int>(wires_.size()); }
    int num_gate_cuts() const { return static_cast<int>(gates_.size()); }
    /// Wire-cut ends per component: (prepared inputs, measured outputs, gate halves).
    std::vector<std::array<int, 3>> component_cut_ends() const;

    /// Builds the executable circuit of component k for the given settings of its cut ends.
    /// `settings` holds one entry per wire cut and per gate cut (wire cuts first); entries for
    /// cuts not touching k are ignored.
    ComponentCircuit build(int k, const std::vector<CutEndSetting> &settings) const;

    /// Exact or sampled expectation of the observable on the uncut circuit.
    ReconstructResult reconstruct(const ReconstructOptions &opt = {}) const;

    /// Number of variants in the full product: 16^k1 * 6^k2.
    BigInt variant_total() const;

    /// Calls `visit` for every variant of the full product.
    /// @throws std::length_error when the product exceeds `cap`
    void for_each_variant(const std::function<void(const Variant &)> &visit,
                          std::uint64_t cap = kDefaultVariantCap) const;

    /// Distinct executable settings across the product (I and Z merge).
    std::uint64_t distinct_settings(std::uint64_t cap = kDefaultVariantCap) const;

    /// Sum of 4^w_in * 3^w_out * 5^g over components; with `reuse`, up to `max_shared`
    /// components whose circuits coincide with an earlier one for every setting are skipped.
    std::uint64_t executed_circuits(bool reuse, int max_shared = std::numeric_limits<int>::max()) const;
    /// Per component, the component whose results it uses (itself when executed).
    std::vector<int> result_owners(bool reuse, int max_shared = std::numeric_limits<int>::max()) const;

private:
    struct Op {
        enum Kind { Gate, Measure, Prepare, Half } kind = Gate;
        cutmap::Gate gate;  // Gate: local operands
        int cut = -1;       // index into wires_ (Measure/Prepare) or gates_ (Half)
        int side = 0;
        int local = -1;     // local qubit for cut ends
    };
    struct WireCut {
        int qubit;
        int upstream_comp, downstream_comp;
    };
    struct GateCut {
        int seq;
        GateCutForm form;
        int comp[2];
    };
    struct Component {
        int qubits = 0;
        std::string observable;
        std::vector<Op> ops;
        std::vector<int> wire_scope;  // wire cuts touching the component
        std::vector<int> gate_scope;  // gate cuts touching the component
    };

    std::vector<WireCut> wires_;
    std::vector<GateCut> gates_;
    std::vector<std::vector<GateCutChannel>> channels_;  // per gate cut
    std::vector<Component> comps_;

    std::string structure_key(int k) const;
};

struct ErrorReport {
    double expectation = 0.0;
    std::optional<double> ground_truth;
    std::optional<double> absolute_error;
};

/// Expectation of `observable` on the uncut circuit, or nullopt above the simulator limit.
std::optional<double> ground_truth(const Circuit &c, const std::string &observable,
                                   int max_qubits = kDefaultMaxSimQubits);

ErrorReport error_report(double expectation, std::optional<double> truth);

struct OverheadReport {
    BigInt postproc;
    BigInt sampling;  // after the reuse discount
    std::uint64_t executed_circuits = 0;
};

/// Overheads of a cut set; s16 and s9 are the sampling exponents after the reuse discount.
OverheadReport overheads(int k1, int k2, int s16, int s9, std::uint64_t executed);

}  // namespace cutmap
