#include "cutmap/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cutmap {

namespace {

struct KindInfo {
    GateKind kind;
    std::string_view name;
    int arity;
    int params;
};

constexpr std::array<KindInfo, 18> kKinds{{
    {GateKind::H, "h", 1, 0},        {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},        {GateKind::Z, "z", 1, 0},
    {GateKind::S, "s", 1, 0},        {GateKind::Sdg, "sdg", 1, 0},
    {GateKind::T, "t", 1, 0},        {GateKind::Tdg, "tdg", 1, 0},
    {GateKind::RX, "rx", 1, 1},      {GateKind::RY, "ry", 1, 1},
    {GateKind::RZ, "rz", 1, 1},      {GateKind::RZZ, "rzz", 2, 1},
    {GateKind::CX, "cx", 2, 0},      {GateKind::CZ, "cz", 2, 0},
    {GateKind::CP, "cp", 2, 1},      {GateKind::SWAP, "swap", 2, 0},
    {GateKind::MEASURE, "measure", 1, 0},
    {GateKind::PREPARE, "prepare", 1, 1},
}};

const KindInfo &info(GateKind k) {
    for (const auto &i : kKinds)
        if (i.kind == k) return i;
    throw std::logic_error("unknown gate kind");
}

}  // namespace

bool is_two_qubit(GateKind k) { return info(k).arity == 2; }
int param_count(GateKind k) { return info(k).params; }
std::string_view gate_name(GateKind k) { return info(k).name; }

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (const auto &i : kKinds) {
        if (i.kind == GateKind::MEASURE || i.kind == GateKind::PREPARE) continue;
        if (i.name == name) return i.kind;
    }
    return std::nullopt;
}

bool Gate::acts_on(int q) const {
    return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
}

bool Gate::same_as(const Gate &o) const {
    if (kind != o.kind || qubits != o.qubits || params.size() != o.params.size()) return false;
    for (std::size_t i = 0; i < params.size(); ++i)
        if (std::abs(params[i] - o.params[i]) > kAngleTol) return false;
    return true;
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0) throw std::invalid_argument("negative qubit count");
}

int Circuit::add(GateKind kind, std::vector<int> qubits, std::vector<double> params) {
    const auto &ki = info(kind);
    if (static_cast<int>(qubits.size()) != ki.arity)
        throw std::invalid_argument(std::string(ki.name) + " expects " + std::to_string(ki.arity) +
                                    " qubit(s)");
    if (static_cast<int>(params.size()) != ki.params)
        throw std::invalid_argument(std::string(ki.name) + " expects " + std::to_string(ki.params) +
                                    " parameter(s)");
    for (int q : qubits)
        if (q < 0 || q >= num_qubits_)
            throw std::out_of_range("qubit " + std::to_string(q) + " outside register of " +
                                    std::to_string(num_qubits_));
    if (ki.arity == 2 && qubits[0] == qubits[1])
        throw std::invalid_argument(std::string(ki.name) + " needs two distinct qubits");
    Gate g{kind, std::move(params), std::move(qubits), static_cast<int>(gates_.size())};
    gates_.push_back(std::move(g));
    return gates_.back().seq;
}

void Circuit::set_observable(std::string pauli) {
    if (static_cast<int>(pauli.size()) != num_qubits_)
        throw std::invalid_argument("observable length " + std::to_string(pauli.size()) +
                                    " != qubit count " + std::to_string(num_qubits_));
    for (char ch : pauli)
        if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z')
            throw std::invalid_argument(std::string("bad Pauli letter '") + ch + "'");
    observable_ = std::move(pauli);
}

std::string Circuit::observable_or_all_z() const {
    return observable_ ? *observable_ : std::string(num_qubits_, 'Z');
}

void Circuit::resize(int num_qubits) {
    if (num_qubits < num_qubits_) throw std::invalid_argument("cannot shrink a circuit");
    num_qubits_ = num_qubits;
    if (observable_) observable_->resize(num_qubits, 'I');
}

bool Circuit::operator==(const Circuit &o) const {
    if (num_qubits_ != o.num_qubits_ || gates_.size() != o.gates_.size() ||
        observable_ != o.observable_)
        return false;
    for (std::size_t i = 0; i < gates_.size(); ++i)
        if (!gates_[i].same_as(o.gates_[i])) return false;
    return true;
}

std::vector<Gate> two_qubit_gates(const Circuit &c) {
    std::vector<Gate> out;
    for (const auto &g : c.gates())
        if (g.two_qubit()) out.push_back(g);
    return out;
}

std::vector<Gate> front_layer(const Circuit &c, const std::set<int> &executed) {
    std::vector<Gate> out;
    std::vector<bool> blocked(c.num_qubits(), false);
    for (const auto &g : c.gates()) {
        if (executed.count(g.seq)) continue;
        bool free = true;
        for (int q : g.qubits) free = free && !blocked[q];
        if (free) out.push_back(g);
        for (int q : g.qubits) blocked[q] = true;
    }
    return out;
}

std::vector<int> gate_counts_per_qubit(const Circuit &c) {
    std::vector<int> n(c.num_qubits(), 0);
    for (const auto &g : c.gates())
        for (int q : g.qubits) ++n[q];
    return n;
}

}  // namespace cutmap
