#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cutmap/circuit.hpp"

namespace cutmap {

using cplx = std::complex<double>;

inline constexpr int kDefaultMaxSimQubits = 26;

/// Dense state over n qubits. Qubit 0 is the least significant bit of the index.
class StateVector {
public:
    explicit StateVector(int n, int max_qubits = kDefaultMaxSimQubits);

    int num_qubits() const { return n_; }
    std::vector<cplx> &amplitudes() { return amp_; }
    const std::vector<cplx> &amplitudes() const { return amp_; }
    double norm_squared() const;

    void apply(const Gate &g);
    /// Zeroes the amplitudes where qubit q disagrees with `bit`. No renormalisation.
    void project(int q, int bit);

private:
    int n_;
    std::vector<cplx> amp_;

    void apply_1q(int q, const cplx m[4]);
};

/// Runs every gate in order from |0...0>. MEASURE is rejected; use branch_eval.
/// @throws std::invalid_argument if the circuit holds a MEASURE or exceeds max_qubits
StateVector simulate(const Circuit &c, int max_qubits = kDefaultMaxSimQubits);

/// <psi|P|psi> for a Pauli string (character i acts on qubit i).
double expectation(const StateVector &sv, const std::string &pauli);

struct BranchOptions {
    int max_branch_depth = 8;
    int max_qubits = kDefaultMaxSimQubits;
};

/// Exact evaluation of a circuit holding MEASURE gates.
///
/// Every assignment of outcomes to the mid-circuit measurements is simulated, and each
/// branch contributes <psi_b|obs|psi_b> (unnormalised, so its weight is the branch
/// probability) times (-1)^outcome for every measurement flagged in `signed_meas`.
/// `signed_meas[k]` refers to the k-th MEASURE in program order. A measurement with no
/// later gate on its qubit and identity observable there is folded into the observable.
/// @throws std::runtime_error when more than max_branch_depth measurements must branch
double branch_eval(const Circuit &c, const std::string &obs, const std::vector<bool> &signed_meas,
                   const BranchOptions &opt = {});

/// Multinomial sampling of computational-basis outcomes. Keys print qubit n-1 first.
std::map<std::string, int> sample(const StateVector &sv, int shots, std::uint64_t seed);

}  // namespace cutmap
