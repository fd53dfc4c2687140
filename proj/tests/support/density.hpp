// Small dense density-matrix arithmetic used as an independent oracle in tests.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cutmap/qpd.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat m2(cd a, cd b, cd c, cd d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

inline Mat eye(int n) { return Mat::Identity(n, n); }

inline Mat pauli(char p) {
    const cd i(0, 1);
    switch (p) {
    case 'X': return m2(0, 1, 1, 0);
    case 'Y': return m2(0, -i, i, 0);
    case 'Z': return m2(1, 0, 0, -1);
    default: return eye(2);
    }
}

/// Single-qubit gate matrices written out independently of the simulator.
inline Mat gate1(cutmap::GateKind k, const std::vector<double> &p = {}) {
    using cutmap::GateKind;
    const cd i(0, 1);
    const double r = 1.0 / std::sqrt(2.0);
    switch (k) {
    case GateKind::H: return m2(r, r, r, -r);
    case GateKind::X: return pauli('X');
    case GateKind::Y: return pauli('Y');
    case GateKind::Z: return pauli('Z');
    case GateKind::S: return m2(1, 0, 0, i);
    case GateKind::Sdg: return m2(1, 0, 0, -i);
    case GateKind::T: return m2(1, 0, 0, std::exp(i * (M_PI / 4)));
    case GateKind::Tdg: return m2(1, 0, 0, std::exp(-i * (M_PI / 4)));
    case GateKind::RX: return m2(std::cos(p[0] / 2), -i * std::sin(p[0] / 2), -i * std::sin(p[0] / 2), std::cos(p[0] / 2));
    case GateKind::RY: return m2(std::cos(p[0] / 2), -std::sin(p[0] / 2), std::sin(p[0] / 2), std::cos(p[0] / 2));
    case GateKind::RZ: return m2(std::exp(-i * (p[0] / 2)), 0, 0, std::exp(i * (p[0] / 2)));
    default: throw std::logic_error("not a 1q gate");
    }
}

/// Two-qubit gate with operand 0 as the left tensor factor.
inline Mat gate2(cutmap::GateKind k, const std::vector<double> &p = {}) {
    using cutmap::GateKind;
    const cd i(0, 1);
    Mat g = Mat::Zero(4, 4);
    switch (k) {
    case GateKind::CX: g(0, 0) = g(1, 1) = 1; g(2, 3) = g(3, 2) = 1; return g;
    case GateKind::CZ: g(0, 0) = g(1, 1) = g(2, 2) = 1; g(3, 3) = -1; return g;
    case GateKind::CP: g(0, 0) = g(1, 1) = g(2, 2) = 1; g(3, 3) = std::exp(i * p[0]); return g;
    case GateKind::RZZ:
        g(0, 0) = g(3, 3) = std::exp(-i * (p[0] / 2));
        g(1, 1) = g(2, 2) = std::exp(i * (p[0] / 2));
        return g;
    case GateKind::SWAP: g(0, 0) = g(3, 3) = 1; g(1, 2) = g(2, 1) = 1; return g;
    default: throw std::logic_error("not a 2q gate");
    }
}

/// Random density matrix of dimension d (Ginibre construction).
inline Mat random_density(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0, 1);
    Mat g(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) g(a, b) = cd(n(rng), n(rng));
    Mat rho = g * g.adjoint();
    return rho / rho.trace();
}

/// Linear map on one qubit as a sum of w * A rho B^dagger.
struct Branch {
    Mat a, b;
    double w;
};
using Map1 = std::vector<Branch>;

inline Map1 unitary_map(const Mat &u) { return {{u, u, 1.0}}; }

inline Map1 compose(const Map1 &later, const Map1 &earlier) {
    Map1 r;
    for (const auto &l : later)
        for (const auto &e : earlier) r.push_back({l.a * e.a, l.b * e.b, l.w * e.w});
    return r;
}

inline Map1 local_op_map(cutmap::LocalOp op) {
    using cutmap::LocalOp;
    Mat p0 = m2(1, 0, 0, 0), p1 = m2(0, 0, 0, 1);
    switch (op) {
    case LocalOp::Identity: return unitary_map(eye(2));
    case LocalOp::PauliZ: return unitary_map(pauli('Z'));
    case LocalOp::S: return unitary_map(gate1(cutmap::GateKind::S));
    case LocalOp::Sdg: return unitary_map(gate1(cutmap::GateKind::Sdg));
    case LocalOp::MeasureZ: return {{p0, p0, 1.0}, {p1, p1, -1.0}};
    }
    return {};
}

inline Map1 local_list_map(const std::vector<cutmap::LocalGate> &gates) {
    Map1 m = unitary_map(eye(2));
    for (const auto &[k, p] : gates) m = compose(unitary_map(gate1(k, p)), m);
    return m;
}

/// Applies sum over channels of coeff * (side0 x side1)(rho).
inline Mat apply_gate_cut(const cutmap::GateCutForm &f, const Mat &rho) {
    Mat out = Mat::Zero(4, 4);
    for (const auto &ch : cutmap::gate_cut_channels(f.theta)) {
        Map1 side[2];
        for (int s = 0; s < 2; ++s)
            side[s] = compose(local_list_map(f.post[s]), compose(local_op_map(ch.ops[s]), local_list_map(f.pre[s])));
        for (const auto &x : side[0])
            for (const auto &y : side[1])
                out += ch.coeff * x.w * y.w * kron(x.a, y.a) * rho * kron(x.b, y.b).adjoint();
    }
    return out;
}

inline Mat prep_projector(cutmap::PrepState s) {
    const cd i(0, 1);
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd v(2);
    switch (s) {
    case cutmap::PrepState::Zero: v << 1, 0; break;
    case cutmap::PrepState::One: v << 0, 1; break;
    case cutmap::PrepState::Plus: v << r, r; break;
    case cutmap::PrepState::IPlus: v << r, i * r; break;
    }
    return v * v.adjoint();
}

/// sum over wire terms of coeff * Tr(rho B) * |prep><prep|.
inline Mat apply_wire_cut(const Mat &rho) {
    Mat out = Mat::Zero(2, 2);
    for (const auto &t : cutmap::wire_cut_terms()) {
        cd tr = (rho * pauli(cutmap::basis_letter(t.basis))).trace();
        out += t.coeff * tr * prep_projector(t.prep);
    }
    return out;
}

inline double max_abs(const Mat &m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
