#pragma once

#include <cstdint>

#include "json.hpp"

#include "cutmap/circuit.hpp"
#include "cutmap/hemicut.hpp"
#include "cutmap/iso_reuse.hpp"
#include "cutmap/mapping.hpp"
#include "cutmap/overheads.hpp"
#include "cutmap/reconstruct.hpp"

namespace cutmap {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

/// Exact integer when it fits a double without loss, decimal string otherwise.
Json big_to_json(const BigInt &v);

/// {"num_qubits", "gates": [{"name", "qubits", "params", "seq"}]}
Json circuit_to_json(const Circuit &c);
/// @throws std::invalid_argument for unknown gate names or malformed documents
Circuit circuit_from_json(const Json &j);

/// {"wire_cuts": [{"qubit", "after_occurrence"}], "gate_cuts": [seq], "k1", "k2", "postproc", "sampling"}
Json cutset_to_json(const CutLocations &loc);

Json marginals_to_json(const InteractionGraph &g, const FilterResult &f);

/// Template gate list, instance count, boundary edge count, reuse count.
Json iso_to_json(const IsoBlock &block, int reuse_count);

Json metrics_to_json(const RouteMetrics &m);

/// Gate stream with physical operands, SWAP / remote annotations and EPR session ids.
Json routed_to_json(const RoutedCircuit &r);

/// One entry per variant: channel vector, coefficient, component circuits as QASM, and per
/// component whether it runs or takes its results from another component.
/// @throws std::length_error above `cap` variants
Json manifest_to_json(const CutPlan &plan, bool reuse = false, int max_shared = 0,
                      std::uint64_t cap = kDefaultVariantCap);

}  // namespace cutmap
