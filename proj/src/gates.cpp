#include "entsim/gates.hpp"

#include <cmath>

#include "entsim/common.hpp"

namespace entsim {

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::U3:
        case GateKind::H:
        case GateKind::X:
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            return 1;
        case GateKind::CNOT:
        case GateKind::CH:
        case GateKind::SWAP:
            return 2;
        case GateKind::CCX:
            return 3;
    }
    throw structural_error("unknown gate kind");
}

int gate_param_count(GateKind kind) {
    switch (kind) {
        case GateKind::U3:
            return 3;
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            return 1;
        default:
            return 0;
    }
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::U3: return "u3";
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::RX: return "rx";
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::CNOT: return "cx";
        case GateKind::CH: return "ch";
        case GateKind::CCX: return "ccx";
        case GateKind::SWAP: return "swap";
    }
    throw structural_error("unknown gate kind");
}

GateOp GateOp::u3(int q, double theta, double phi, double lambda) {
    return {GateKind::U3, {q}, {theta, phi, lambda}};
}
GateOp GateOp::h(int q) { return {GateKind::H, {q}, {}}; }
GateOp GateOp::x(int q) { return {GateKind::X, {q}, {}}; }
GateOp GateOp::rx(int q, double angle) { return {GateKind::RX, {q}, {angle}}; }
GateOp GateOp::ry(int q, double angle) { return {GateKind::RY, {q}, {angle}}; }
GateOp GateOp::rz(int q, double angle) { return {GateKind::RZ, {q}, {angle}}; }
GateOp GateOp::cnot(int control, int target) { return {GateKind::CNOT, {control, target}, {}}; }
GateOp GateOp::ch(int control, int target) { return {GateKind::CH, {control, target}, {}}; }
GateOp GateOp::ccx(int control_a, int control_b, int target) {
    return {GateKind::CCX, {control_a, control_b, target}, {}};
}
GateOp GateOp::swap_gate(int a, int b) { return {GateKind::SWAP, {a, b}, {}}; }

namespace {

const double kInvSqrt2 = std::sqrt(0.5);  // correctly rounded, unlike 1/sqrt(2)

std::vector<cplx> u3_matrix(double theta, double phi, double lambda) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {
        cplx(c, 0.0), -std::polar(1.0, lambda) * s,
        std::polar(1.0, phi) * s, std::polar(1.0, lambda + phi) * c,
    };
}

// Embeds a 2x2 block as a controlled gate: identity on the control-0
// block, `u` on the control-1 block. Basis |control target⟩.
std::vector<cplx> controlled(const std::vector<cplx>& u) {
    std::vector<cplx> m(16, cplx(0.0, 0.0));
    m[0] = m[5] = 1.0;
    m[10] = u[0];
    m[11] = u[1];
    m[14] = u[2];
    m[15] = u[3];
    return m;
}

}  // namespace

std::vector<cplx> pauli_matrix(int index) {
    switch (index) {
        case 0: return {1.0, 0.0, 0.0, 1.0};
        case 1: return {0.0, 1.0, 1.0, 0.0};
        case 2: return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0};
        case 3: return {1.0, 0.0, 0.0, -1.0};
        default: throw structural_error("pauli index out of range");
    }
}

std::vector<cplx> gate_matrix(const GateOp& op) {
    const std::size_t n_params = static_cast<std::size_t>(gate_param_count(op.kind));
    if (op.params.size() != n_params) {
        throw structural_error("wrong parameter count for gate");
    }
    switch (op.kind) {
        case GateKind::U3:
            return u3_matrix(op.params[0], op.params[1], op.params[2]);
        case GateKind::H:
            return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
        case GateKind::X:
            return pauli_matrix(1);
        case GateKind::RX: {
            const double c = std::cos(op.params[0] / 2.0);
            const double s = std::sin(op.params[0] / 2.0);
            return {cplx(c, 0.0), cplx(0.0, -s), cplx(0.0, -s), cplx(c, 0.0)};
        }
        case GateKind::RY: {
            const double c = std::cos(op.params[0] / 2.0);
            const double s = std::sin(op.params[0] / 2.0);
            return {cplx(c, 0.0), cplx(-s, 0.0), cplx(s, 0.0), cplx(c, 0.0)};
        }
        case GateKind::RZ: {
            return {std::polar(1.0, -op.params[0] / 2.0), 0.0,
                    0.0, std::polar(1.0, op.params[0] / 2.0)};
        }
        case GateKind::CNOT:
            return controlled(pauli_matrix(1));
        case GateKind::CH:
            return controlled(gate_matrix(GateOp::h(0)));
        case GateKind::SWAP:
            return {1, 0, 0, 0,
                    0, 0, 1, 0,
                    0, 1, 0, 0,
                    0, 0, 0, 1};
        case GateKind::CCX: {
            std::vector<cplx> m(64, cplx(0.0, 0.0));
            for (int i = 0; i < 6; ++i) m[static_cast<std::size_t>(i) * 8 + i] = 1.0;
            m[6 * 8 + 7] = 1.0;
            m[7 * 8 + 6] = 1.0;
            return m;
        }
    }
    throw structural_error("unknown gate kind");
}

}  // namespace entsim
