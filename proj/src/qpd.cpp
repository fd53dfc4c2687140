#include "cutmap/qpd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cutmap {

char basis_letter(MeasBasis b) { return "IXYZ"[static_cast<int>(b)]; }

double wire_cut_coefficient(MeasBasis basis, PrepState prep) {
    for (const auto &t : wire_cut_terms())
        if (t.basis == basis && t.prep == prep) return t.coeff;
    return 0.0;
}

const std::vector<WireTerm> &wire_cut_terms() {
    // rho = 1/2 [ Tr(rho I)(|0><0| + |1><1|) + Tr(rho Z)(|0><0| - |1><1|)
    //           + Tr(rho X)(2|+><+| - I) + Tr(rho Y)(2|i><i| - I) ]
    static const std::vector<WireTerm> terms = {
        {MeasBasis::I, PrepState::Zero, 0.5},  {MeasBasis::I, PrepState::One, 0.5},
        {MeasBasis::Z, PrepState::Zero, 0.5},  {MeasBasis::Z, PrepState::One, -0.5},
        {MeasBasis::X, PrepState::Plus, 1.0},  {MeasBasis::X, PrepState::Zero, -0.5},
        {MeasBasis::X, PrepState::One, -0.5},  {MeasBasis::Y, PrepState::IPlus, 1.0},
        {MeasBasis::Y, PrepState::Zero, -0.5}, {MeasBasis::Y, PrepState::One, -0.5},
    };
    return terms;
}

bool append_measurement(Circuit &c, int q, MeasBasis basis) {
    switch (basis) {
    case MeasBasis::X: c.add(GateKind::H, {q}); break;
    case MeasBasis::Y:
        c.add(GateKind::Sdg, {q});
        c.add(GateKind::H, {q});
        break;
    default: break;
    }
    c.add(GateKind::MEASURE, {q});
    return basis != MeasBasis::I;
}

std::string_view local_op_name(LocalOp op) {
    switch (op) {
    case LocalOp::Identity: return "id";
    case LocalOp::PauliZ: return "z";
    case LocalOp::MeasureZ: return "mz";
    case LocalOp::S: return "s";
    case LocalOp::Sdg: return "sdg";
    }
    return "?";
}

std::vector<GateCutChannel> gate_cut_channels(double theta) {
    const double c = std::cos(theta), s = std::sin(theta), cs = c * s;
    // (I + iaZ) is e^{i a pi/4 Z} up to phase: Sdg for a = +1, S for a = -1. The sign-weighted
    // sum over Z outcomes is the MeasureZ op.
    return {
        {{LocalOp::Identity, LocalOp::Identity}, c * c},
        {{LocalOp::PauliZ, LocalOp::PauliZ}, s * s},
        {{LocalOp::MeasureZ, LocalOp::Sdg}, cs},
        {{LocalOp::MeasureZ, LocalOp::S}, -cs},
        {{LocalOp::Sdg, LocalOp::MeasureZ}, cs},
        {{LocalOp::S, LocalOp::MeasureZ}, -cs},
    };
}

bool gate_cuttable(GateKind k) {
    return k == GateKind::CZ || k == GateKind::CP || k == GateKind::RZZ || k == GateKind::CX;
}

GateCutForm gate_cut_form(const Gate &g) {
    GateCutForm f;
    const double pi = std::numbers::pi;
    switch (g.kind) {
    case GateKind::CP:
    case GateKind::CZ: {
        // CP(l) = RZ(l/2) x RZ(l/2) * e^{i (l/4) Z x Z} up to global phase
        const double lam = g.kind == GateKind::CZ ? pi : g.params[0];
        f.theta = lam / 4;
        f.post[0] = {{GateKind::RZ, {lam / 2}}};
        f.post[1] = {{GateKind::RZ, {lam / 2}}};
        return f;
    }
    case GateKind::RZZ:
        f.theta = -g.params[0] / 2;
        return f;
    case GateKind::CX:
        f.theta = pi / 4;
        f.pre[1] = {{GateKind::H, {}}};
        f.post[0] = {{GateKind::RZ, {pi / 2}}};
        f.post[1] = {{GateKind::RZ, {pi / 2}}, {GateKind::H, {}}};
        return f;
    default:
        throw std::invalid_argument("cannot gate-cut '" + std::string(gate_name(g.kind)) +
                                    "'; use wire cuts around it instead");
    }
}

bool append_gate_half(Circuit &c, int q, const GateCutForm &form, int side, LocalOp op) {
    for (const auto &[k, p] : form.pre[side]) c.add(k, {q}, p);
    bool signed_meas = false;
    switch (op) {
    case LocalOp::Identity: break;
    case LocalOp::PauliZ: c.add(GateKind::Z, {q}); break;
    case LocalOp::MeasureZ:
        c.add(GateKind::MEASURE, {q});
        signed_meas = true;
        break;
    case LocalOp::S: c.add(GateKind::S, {q}); break;
    case LocalOp::Sdg: c.add(GateKind::Sdg, {q}); break;
    }
    for (const auto &[k, p] : form.post[side]) c.add(k, {q}, p);
    return signed_meas;
}

}  // namespace cutmap
