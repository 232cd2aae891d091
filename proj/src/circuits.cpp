#include "entsim/circuits.hpp"

#include <numbers>

#include "entsim/common.hpp"

namespace entsim {

CircuitIR build_cat_circuit(int n_qubits, double theta, double phi) {
    if (n_qubits < 1) throw config_error("cat circuit needs at least one qubit");
    if (theta < 0.0 || theta > std::numbers::pi) {
        throw config_error("cat angle theta must lie in [0, pi]");
    }
    CircuitIR c{n_qubits, {}};
    c.append(GateOp::u3(0, theta, phi, 0.0));
    for (int q = 0; q + 1 < n_qubits; ++q) c.append(GateOp::cnot(q, q + 1));
    return c;
}

CircuitIR build_werner_circuit(double theta) {
    if (theta < 0.0 || theta > std::numbers::pi) {
        throw config_error("Werner angle theta must lie in [0, pi]");
    }
    // Walks |000⟩ → sin(θ/2)|001⟩ + cos(θ/2)(|010⟩+|100⟩)/√2 with real
    // amplitudes throughout, so the output matches the target exactly.
    CircuitIR c{3, {}};
    c.append(GateOp::u3(2, theta, 0.0, 0.0));
    c.append(GateOp::x(2));
    c.append(GateOp::ch(2, 0));
    c.append(GateOp::ccx(2, 0, 1));
    c.append(GateOp::x(2));
    c.append(GateOp::x(1));
    c.append(GateOp::cnot(2, 1));
    return c;
}

CircuitIR build_bell_circuit(BellSign sign) {
    CircuitIR c{2, {}};
    if (sign == BellSign::minus) c.append(GateOp::x(0));  // |1⟩ → H gives (|0⟩−|1⟩)/√2
    c.append(GateOp::h(0));
    c.append(GateOp::cnot(0, 1));
    return c;
}

}  // namespace entsim
