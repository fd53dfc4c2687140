#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "cutmap/circuit.hpp"

namespace cutmap {

/// Basis measured on the upstream end of a cut wire. I and Z run the same circuit; I
/// ignores the outcome, Z weights it by (-1)^bit.
enum class MeasBasis { I = 0, X = 1, Y = 2, Z = 3 };

char basis_letter(MeasBasis b);

/// One term of the identity-wire expansion rho = sum coeff * Tr(rho B) * |prep><prep|.
struct WireTerm {
    MeasBasis basis;
    PrepState prep;
    double coeff;
};

/// Coefficient of (basis, prep) in the expansion; zero for pairs that do not occur.
double wire_cut_coefficient(MeasBasis basis, PrepState prep);
/// The ten (basis, prep) pairs with a non-zero coefficient, in a fixed order.
const std::vector<WireTerm> &wire_cut_terms();

/// Appends the basis change and a Z-basis MEASURE on qubit q. Returns whether the
/// outcome is sign-weighted (false only for I).
bool append_measurement(Circuit &c, int q, MeasBasis basis);

/// Local instruction on one half of a cut e^{i theta Z x Z}.
enum class LocalOp {
    Identity,
    PauliZ,
    MeasureZ,  // signed Z measurement that continues on the collapsed state
    S,
    Sdg,
};

std::string_view local_op_name(LocalOp op);

struct GateCutChannel {
    std::array<LocalOp, 2> ops;
    double coeff;
};

/// The six channels whose weighted sum equals S(e^{i theta Z x Z}).
std::vector<GateCutChannel> gate_cut_channels(double theta);

using LocalGate = std::pair<GateKind, std::vector<double>>;

/// A two-qubit gate written as post * e^{i theta Z x Z} * pre, up to global phase.
/// Index 0/1 of pre and post refer to the gate's operand 0/1.
struct GateCutForm {
    double theta = 0.0;
    std::array<std::vector<LocalGate>, 2> pre;
    std::array<std::vector<LocalGate>, 2> post;
};

bool gate_cuttable(GateKind k);

/// @throws std::invalid_argument for kinds other than CZ, CP, RZZ and CX
GateCutForm gate_cut_form(const Gate &g);

/// Appends one cut-gate half on qubit q: pre, the local op, post. Returns whether a signed
/// MEASURE was appended.
bool append_gate_half(Circuit &c, int q, const GateCutForm &form, int side, LocalOp op);

}  // namespace cutmap
