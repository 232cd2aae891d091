#pragma once

#include <complex>
#include <string_view>
#include <vector>

namespace entsim {

using cplx = std::complex<double>;

enum class GateKind { U3, H, X, RX, RY, RZ, CNOT, CH, CCX, SWAP };

int gate_arity(GateKind kind);
int gate_param_count(GateKind kind);
std::string_view gate_name(GateKind kind);  // lowercase mnemonic used by the text format

// One gate application: `qubits` lists controls before targets, `params`
// holds angles in radians.
struct GateOp {
    GateKind kind;
    std::vector<int> qubits;
    std::vector<double> params;

    bool operator==(const GateOp&) const = default;

    static GateOp u3(int q, double theta, double phi, double lambda);
    static GateOp h(int q);
    static GateOp x(int q);
    static GateOp rx(int q, double angle);
    static GateOp ry(int q, double angle);
    static GateOp rz(int q, double angle);
    static GateOp cnot(int control, int target);
    static GateOp ch(int control, int target);
    static GateOp ccx(int control_a, int control_b, int target);
    static GateOp swap_gate(int a, int b);
};

// Dense matrix of the gate in the |q0 q1 ...⟩ basis given by its operand
// order (first operand = most significant bit). Row-major, dim 2^arity.
//
// Conventions: R_A(α) = exp(-i α σ_A / 2);
// U3(θ,φ,λ) = [[cos(θ/2), -e^{iλ} sin(θ/2)], [e^{iφ} sin(θ/2), e^{i(λ+φ)} cos(θ/2)]].
std::vector<cplx> gate_matrix(const GateOp& op);

// 2x2 Pauli matrices, row-major. index: 0=I, 1=X, 2=Y, 3=Z.
std::vector<cplx> pauli_matrix(int index);

}  // namespace entsim
