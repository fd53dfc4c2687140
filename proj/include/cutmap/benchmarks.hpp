#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutmap/circuit.hpp"

namespace cutmap::bench {

/// H on qubit 0 followed by a CX chain.
Circuit ghz(int n);
/// Linear cluster state: H on all qubits, then a CZ chain.
Circuit linear_cluster(int n);
/// Bernstein-Vazirani with the ancilla on the last qubit. Without a seed the hidden
/// string is all ones; with one it is drawn at random (never all zeros).
Circuit bernstein_vazirani(int n, std::optional<std::uint64_t> seed = std::nullopt);
/// Textbook QFT without the final qubit reversal. With `cp_as_cx` every CP is lowered
/// to two CX and three RZ.
Circuit qft(int n, bool cp_as_cx = false);
/// Cuccaro ripple-carry adder on n = 2m + 2 qubits, Toffolis lowered to 6 CX.
Circuit ripple_carry_adder(int n);
/// One RY/RZ layer, a CX chain, another RY/RZ layer; angles drawn from `seed`.
Circuit hardware_efficient_ansatz(int n, std::uint64_t seed = 7);
/// Supremacy-style random circuit on a sqrt(n) x sqrt(n) grid with 8 CZ cycles.
Circuit supremacy(int n, std::uint64_t seed = 7);

/// Names accepted by make_benchmark.
std::vector<std::string> names();
/// Builds a benchmark by name: ghz, lc, bv, qft, qftcx, rca, hwea, spm.
/// @throws std::invalid_argument for unknown names or unsupported sizes
Circuit make_benchmark(const std::string &name, int n,
                       std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace cutmap::bench
