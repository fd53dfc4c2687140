#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cutmap {

/// Absolute tolerance for comparing gate angles.
inline constexpr double kAngleTol = 1e-9;

enum class GateKind {
    H, X, Y, Z, S, Sdg, T, Tdg,
    RX, RY, RZ,
    RZZ, CX, CZ, CP, SWAP,
    MEASURE,  // Z-basis projective measurement, only in generated variants
    PREPARE,  // fresh-qubit preparation, param 0 holds a PrepState code
};

/// States a cut wire can be re-initialised to.
enum class PrepState { Zero = 0, One = 1, Plus = 2, IPlus = 3 };

bool is_two_qubit(GateKind k);
int param_count(GateKind k);
std::string_view gate_name(GateKind k);
/// Lower-case OpenQASM name to kind; nullopt for names outside the supported set.
std::optional<GateKind> gate_kind_from_name(std::string_view name);

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<double> params;
    std::vector<int> qubits;
    int seq = 0;

    bool two_qubit() const { return is_two_qubit(kind); }
    bool acts_on(int q) const;
    /// Same kind, same operands, params within kAngleTol. seq is ignored.
    bool same_as(const Gate &o) const;
};

/// Gate-list circuit. Gates are kept in program order and seq is their index.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    /// Appends a gate and returns its seq.
    /// @throws std::invalid_argument on bad arity, param count or repeated operand
    /// @throws std::out_of_range on a qubit index outside the register
    int add(GateKind kind, std::vector<int> qubits, std::vector<double> params = {});

    const std::optional<std::string> &observable() const { return observable_; }
    /// Pauli string over {I,X,Y,Z}, character i acts on qubit i.
    void set_observable(std::string pauli);
    /// The observable, or all-Z when none is set.
    std::string observable_or_all_z() const;

    /// Grows the register; existing gates are unaffected.
    void resize(int num_qubits);

    bool operator==(const Circuit &o) const;

private:
    int num_qubits_ = 0;
    std::vector<Gate> gates_;
    std::optional<std::string> observable_;
};

std::vector<Gate> two_qubit_gates(const Circuit &c);

/// Gates whose every earlier gate on a shared qubit is in `executed`.
std::vector<Gate> front_layer(const Circuit &c, const std::set<int> &executed);

/// Per-qubit count of gates touching it.
std::vector<int> gate_counts_per_qubit(const Circuit &c);

}  // namespace cutmap
