#pragma once

#include "entsim/circuit.hpp"

namespace entsim {

// U3(θ,φ,0) on qubit 0 followed by a CNOT chain 0→1→...→n−1; prepares
// cos(θ/2)|0...0⟩ + e^{iφ} sin(θ/2)|1...1⟩.
CircuitIR build_cat_circuit(int n_qubits, double theta, double phi);

// Three-qubit preparation of sin(θ/2)|001⟩ + cos(θ/2)(|010⟩ + |100⟩)/√2,
// using {U3, X, CH, CCX, CNOT}.
CircuitIR build_werner_circuit(double theta);

enum class BellSign { plus, minus };

// (|00⟩ ± |11⟩)/√2.
CircuitIR build_bell_circuit(BellSign sign);

}  // namespace entsim
