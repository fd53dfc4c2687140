#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "cutmap/circuit.hpp"

namespace cutmap {

/// Parse failure carrying a 1-based source position.
class QasmError : public std::runtime_error {
public:
    QasmError(const std::string &msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Parses the OpenQASM 2.0 subset: one qreg, the GateKind gate set, u1/u2/u3/p lowered
/// to rotations, creg/barrier/measure accepted and dropped.
Circuit parse_qasm(std::string_view text);

/// Prints a circuit as OpenQASM 2.0. MEASURE and PREPARE are emitted as measure/reset
/// sequences that parse_qasm does not accept back.
std::string to_qasm(const Circuit &c);

}  // namespace cutmap
