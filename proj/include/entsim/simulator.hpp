#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "entsim/circuit.hpp"
#include "entsim/kernels.hpp"
#include "entsim/state_vector.hpp"

namespace entsim {

using kernels::Exec;

// Applies the gate embedded on op.qubits (identity elsewhere).
StateVector apply_gate(const StateVector& state, const GateOp& op,
                       Exec exec = Exec::auto_pick);
void apply_gate_inplace(StateVector& state, const GateOp& op, Exec exec = Exec::auto_pick);

// Left-to-right application of ops to |0...0⟩.
StateVector run_circuit(const CircuitIR& circuit, Exec exec = Exec::auto_pick);

// Marginal outcome probabilities of the listed qubits, keyed by bitstring
// in subset order (first listed qubit = leftmost character). Entries with
// probability exactly 0 are omitted.
std::map<std::string, double> exact_probabilities(const StateVector& state,
                                                  std::span<const int> measured_qubits,
                                                  Exec exec = Exec::auto_pick);

// Same marginal as a flat table: bin index reads the measured bits as a
// binary number, first listed qubit most significant.
std::vector<double> probability_vector(const StateVector& state,
                                       std::span<const int> measured_qubits,
                                       Exec exec = Exec::auto_pick);

// Partial trace down to one qubit, row-major [ρ00, ρ01, ρ10, ρ11].
std::array<cplx, 4> reduced_density_matrix(const StateVector& state, int qubit,
                                           Exec exec = Exec::auto_pick);

double purity(const std::array<cplx, 4>& rho);  // tr(ρ²)

// ⟨σᶻ⟩ of one qubit, exact.
double z_expectation(const StateVector& state, int qubit, Exec exec = Exec::auto_pick);

// Expectation of the all-qubits σᶻ string (−1)^{popcount}.
double parity_expectation(const StateVector& state, Exec exec = Exec::auto_pick);

cplx inner_product(const StateVector& a, const StateVector& b);  // ⟨a|b⟩

// |⟨a|b⟩|: equality of states up to global phase means this is 1.
double fidelity_overlap(const StateVector& a, const StateVector& b);

void check_measured_subset(std::span<const int> measured_qubits, int n_qubits);

}  // namespace entsim
