#include "cutmap/sim.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cutmap {

namespace {

constexpr cplx kI{0.0, 1.0};

void matrix_for(const Gate &g, cplx m[4]) {
    const double r2 = std::numbers::sqrt2 / 2;
    switch (g.kind) {
    case GateKind::H: m[0] = r2; m[1] = r2; m[2] = r2; m[3] = -r2; return;
    case GateKind::X: m[0] = 0; m[1] = 1; m[2] = 1; m[3] = 0; return;
    case GateKind::Y: m[0] = 0; m[1] = -kI; m[2] = kI; m[3] = 0; return;
    case GateKind::Z: m[0] = 1; m[1] = 0; m[2] = 0; m[3] = -1; return;
    case GateKind::S: m[0] = 1; m[1] = 0; m[2] = 0; m[3] = kI; return;
    case GateKind::Sdg: m[0] = 1; m[1] = 0; m[2] = 0; m[3] = -kI; return;
    case GateKind::T: m[0] = 1; m[1] = 0; m[2] = 0; m[3] = std::polar(1.0, std::numbers::pi / 4); return;
    case GateKind::Tdg: m[0] = 1; m[1] = 0; m[2] = 0; m[3] = std::polar(1.0, -std::numbers::pi / 4); return;
    case GateKind::RX: {
        double c = std::cos(g.params[0] / 2), s = std::sin(g.params[0] / 2);
        m[0] = c; m[1] = -kI * s; m[2] = -kI * s; m[3] = c;
        return;
    }
    case GateKind::RY: {
        double c = std::cos(g.params[0] / 2), s = std::sin(g.params[0] / 2);
        m[0] = c; m[1] = -s; m[2] = s; m[3] = c;
        return;
    }
    case GateKind::RZ:
        m[0] = std::polar(1.0, -g.params[0] / 2); m[1] = 0; m[2] = 0;
        m[3] = std::polar(1.0, g.params[0] / 2);
        return;
    default: throw std::logic_error("not a single-qubit unitary");
    }
}

}  // namespace

StateVector::StateVector(int n, int max_qubits) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative qubit count");
    if (n > max_qubits)
        throw std::invalid_argument("circuit has " + std::to_string(n) +
                                    " qubits, simulator limit is " + std::to_string(max_qubits));
    amp_.assign(std::size_t{1} << n, cplx{0.0, 0.0});
    amp_[0] = 1.0;
}

double StateVector::norm_squared() const {
    double s = 0;
    for (const auto &a : amp_) s += std::norm(a);
    return s;
}

void StateVector::apply_1q(int q, const cplx m[4]) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (i & bit) continue;
        cplx a0 = amp_[i], a1 = amp_[i | bit];
        amp_[i] = m[0] * a0 + m[1] * a1;
        amp_[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void StateVector::apply(const Gate &g) {
    switch (g.kind) {
    case GateKind::MEASURE: throw std::invalid_argument("MEASURE needs branch evaluation");
    case GateKind::PREPARE: {
        // The qubit is fresh, so preparation is the unitary taking |0> to the state.
        const int q = g.qubits[0];
        Gate h{GateKind::H, {}, {q}, 0};
        switch (static_cast<PrepState>(static_cast<int>(g.params[0]))) {
        case PrepState::Zero: return;
        case PrepState::One: apply(Gate{GateKind::X, {}, {q}, 0}); return;
        case PrepState::Plus: apply(h); return;
        case PrepState::IPlus:
            apply(h);
            apply(Gate{GateKind::S, {}, {q}, 0});
            return;
        }
        throw std::invalid_argument("bad PREPARE state code");
    }
    case GateKind::CX: {
        const std::size_t c = std::size_t{1} << g.qubits[0], t = std::size_t{1} << g.qubits[1];
        for (std::size_t i = 0; i < amp_.size(); ++i)
            if ((i & c) && !(i & t)) std::swap(amp_[i], amp_[i | t]);
        return;
    }
    case GateKind::SWAP: {
        const std::size_t a = std::size_t{1} << g.qubits[0], b = std::size_t{1} << g.qubits[1];
        for (std::size_t i = 0; i < amp_.size(); ++i)
            if ((i & a) && !(i & b)) std::swap(amp_[i], amp_[(i ^ a) | b]);
        return;
    }
    case GateKind::CZ:
    case GateKind::CP: {
        const std::size_t a = std::size_t{1} << g.qubits[0], b = std::size_t{1} << g.qubits[1];
        const cplx ph = g.kind == GateKind::CZ ? cplx{-1.0, 0.0} : std::polar(1.0, g.params[0]);
        for (std::size_t i = 0; i < amp_.size(); ++i)
            if ((i & a) && (i & b)) amp_[i] *= ph;
        return;
    }
    case GateKind::RZZ: {
        const std::size_t a = std::size_t{1} << g.qubits[0], b = std::size_t{1} << g.qubits[1];
        const cplx even = std::polar(1.0, -g.params[0] / 2), odd = std::polar(1.0, g.params[0] / 2);
        for (std::size_t i = 0; i < amp_.size(); ++i)
            amp_[i] *= (((i & a) != 0) == ((i & b) != 0)) ? even : odd;
        return;
    }
    default: {
        cplx m[4];
        matrix_for(g, m);
        apply_1q(g.qubits[0], m);
    }
    }
}

void StateVector::project(int q, int bit) {
    const std::size_t mask = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); ++i)
        if (((i & mask) != 0) != (bit != 0)) amp_[i] = 0;
}

StateVector simulate(const Circuit &c, int max_qubits) {
    StateVector sv(c.num_qubits(), max_qubits);
    for (const auto &g : c.gates()) sv.apply(g);
    return sv;
}

double expectation(const StateVector &sv, const std::string &pauli) {
    const int n = sv.num_qubits();
    if (static_cast<int>(pauli.size()) != n)
        throw std::invalid_argument("observable length does not match qubit count");
    std::size_t xmask = 0, zmask = 0;
    int ny = 0;
    for (int q = 0; q < n; ++q) {
        char p = pauli[q];
        if (p == 'X' || p == 'Y') xmask |= std::size_t{1} << q;
        if (p == 'Z' || p == 'Y') zmask |= std::size_t{1} << q;
        if (p == 'Y') ++ny;
        if (p != 'I' && p != 'X' && p != 'Y' && p != 'Z')
            throw std::invalid_argument(std::string("bad Pauli letter '") + p + "'");
    }
    // P|i> = i^ny (-1)^{popcount(i & zmask)} |i ^ xmask>
    static const cplx kPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx phase = kPow[ny % 4];
    const auto &a = sv.amplitudes();
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == cplx{0.0, 0.0}) continue;
        double sign = (std::popcount(i & zmask) & 1) ? -1.0 : 1.0;
        acc += std::conj(a[i ^ xmask]) * a[i] * sign;
    }
    return (acc * phase).real();
}

namespace {

struct BranchCtx {
    const Circuit &c;
    const std::string &obs;
    std::vector<int> meas_index;   // per gate position: ordinal among MEASUREs, else -1
    std::vector<bool> fold;        // per gate position: measurement folded into observable
    const std::vector<bool> &signed_meas;
};

double run_branch(const BranchCtx &ctx, StateVector sv, std::size_t from, const std::string &obs) {
    const auto &gates = ctx.c.gates();
    for (std::size_t i = from; i < gates.size(); ++i) {
        const Gate &g = gates[i];
        if (g.kind != GateKind::MEASURE) {
            sv.apply(g);
            continue;
        }
        if (ctx.fold[i]) continue;
        const bool sgn = ctx.signed_meas[ctx.meas_index[i]];
        StateVector one = sv;
        sv.project(g.qubits[0], 0);
        one.project(g.qubits[0], 1);
        double v1 = run_branch(ctx, std::move(one), i + 1, obs);
        double v0 = run_branch(ctx, std::move(sv), i + 1, obs);
        return v0 + (sgn ? -v1 : v1);
    }
    return expectation(sv, obs);
}

}  // namespace

double branch_eval(const Circuit &c, const std::string &obs, const std::vector<bool> &signed_meas,
                   const BranchOptions &opt) {
    const auto &gates = c.gates();
    BranchCtx ctx{c, obs, std::vector<int>(gates.size(), -1), std::vector<bool>(gates.size(), false),
                  signed_meas};
    std::string folded = obs;
    if (static_cast<int>(folded.size()) != c.num_qubits())
        throw std::invalid_argument("observable length does not match qubit count");
    int count = 0, branching = 0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].kind != GateKind::MEASURE) continue;
        ctx.meas_index[i] = count++;
        const int q = gates[i].qubits[0];
        bool terminal = true;
        for (std::size_t j = i + 1; j < gates.size() && terminal; ++j)
            terminal = !gates[j].acts_on(q);
        if (terminal && folded[q] == 'I') {
            ctx.fold[i] = true;
            if (static_cast<std::size_t>(ctx.meas_index[i]) >= signed_meas.size())
                throw std::invalid_argument("signed_meas shorter than the measurement count");
            if (signed_meas[ctx.meas_index[i]]) folded[q] = 'Z';
        } else {
            ++branching;
        }
    }
    if (static_cast<int>(signed_meas.size()) < count)
        throw std::invalid_argument("signed_meas shorter than the measurement count");
    if (branching > opt.max_branch_depth)
        throw std::runtime_error(std::to_string(branching) +
                                 " branching measurements exceed the cap of " +
                                 std::to_string(opt.max_branch_depth));
    return run_branch(ctx, StateVector(c.num_qubits(), opt.max_qubits), 0, folded);
}

std::map<std::string, int> sample(const StateVector &sv, int shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be positive");
    const auto &a = sv.amplitudes();
    std::vector<double> probs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) probs[i] = std::norm(a[i]);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());
    std::map<std::size_t, int> raw;
    for (int s = 0; s < shots; ++s) ++raw[dist(rng)];
    std::map<std::string, int> out;
    const int n = sv.num_qubits();
    for (const auto &[idx, cnt] : raw) {
        std::string key(n, '0');
        for (int q = 0; q < n; ++q)
            if (idx >> q & 1) key[n - 1 - q] = '1';
        out[key] = cnt;
    }
    return out;
}

}  // namespace cutmap
