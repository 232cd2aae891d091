#include "entsim/simulator.hpp"

#include <cmath>
#include <string>

#include "entsim/common.hpp"

namespace entsim {

void apply_gate_inplace(StateVector& state, const GateOp& op, Exec exec) {
    validate_op(op, state.n_qubits());
    const std::vector<cplx> u = gate_matrix(op);
    switch (gate_arity(op.kind)) {
        case 1:
            kernels::apply_1q(state.amplitudes(), state.bit_position(op.qubits[0]), u, exec);
            break;
        case 2:
            kernels::apply_2q(state.amplitudes(),
                              {state.bit_position(op.qubits[0]), state.bit_position(op.qubits[1])},
                              u, exec);
            break;
        case 3:
            kernels::apply_3q(state.amplitudes(),
                              {state.bit_position(op.qubits[0]), state.bit_position(op.qubits[1]),
                               state.bit_position(op.qubits[2])},
                              u, exec);
            break;
        default:
            throw structural_error("unsupported gate arity");
    }
}

StateVector apply_gate(const StateVector& state, const GateOp& op, Exec exec) {
    StateVector out = state;
    apply_gate_inplace(out, op, exec);
    out.check_normalized();
    return out;
}

StateVector run_circuit(const CircuitIR& circuit, Exec exec) {
    StateVector state = init_zero_state(circuit.n_qubits);
    for (const GateOp& op : circuit.ops) apply_gate_inplace(state, op, exec);
    state.check_normalized();
    return state;
}

void check_measured_subset(std::span<const int> measured_qubits, int n_qubits) {
    if (measured_qubits.empty()) {
        throw config_error("measured qubit subset must not be empty");
    }
    for (std::size_t i = 0; i < measured_qubits.size(); ++i) {
        const int q = measured_qubits[i];
        if (q < 0 || q >= n_qubits) {
            throw structural_error("measured qubit " + std::to_string(q) + " out of range");
        }
        for (std::size_t j = i + 1; j < measured_qubits.size(); ++j) {
            if (measured_qubits[j] == q) {
                throw structural_error("duplicate measured qubit " + std::to_string(q));
            }
        }
    }
}

std::vector<double> probability_vector(const StateVector& state,
                                       std::span<const int> measured_qubits, Exec exec) {
    check_measured_subset(measured_qubits, state.n_qubits());
    std::vector<std::size_t> masks;
    masks.reserve(measured_qubits.size());
    for (int q : measured_qubits) masks.push_back(state.mask(q));
    std::vector<double> bins(std::size_t{1} << measured_qubits.size(), 0.0);
    kernels::accumulate_marginal(state.amplitudes(), masks, bins, exec);
    return bins;
}

std::map<std::string, double> exact_probabilities(const StateVector& state,
                                                  std::span<const int> measured_qubits,
                                                  Exec exec) {
    const std::vector<double> bins = probability_vector(state, measured_qubits, exec);
    const std::size_t m = measured_qubits.size();
    std::map<std::string, double> out;
    for (std::size_t b = 0; b < bins.size(); ++b) {
        if (bins[b] == 0.0) continue;
        std::string key(m, '0');
        for (std::size_t j = 0; j < m; ++j) {
            if ((b >> (m - 1 - j)) & 1u) key[j] = '1';
        }
        out.emplace(std::move(key), bins[b]);
    }
    return out;
}

std::array<cplx, 4> reduced_density_matrix(const StateVector& state, int qubit, Exec exec) {
    if (qubit < 0 || qubit >= state.n_qubits()) {
        throw structural_error("qubit index out of range");
    }
    return kernels::reduced_density_1q(state.amplitudes(), state.mask(qubit), exec);
}

double purity(const std::array<cplx, 4>& rho) {
    return std::norm(rho[0]) + std::norm(rho[3]) + 2.0 * std::norm(rho[1]);
}

double z_expectation(const StateVector& state, int qubit, Exec exec) {
    if (qubit < 0 || qubit >= state.n_qubits()) {
        throw structural_error("qubit index out of range");
    }
    return kernels::z_expectation(state.amplitudes(), state.mask(qubit), exec);
}

double parity_expectation(const StateVector& state, Exec exec) {
    return kernels::parity_z_expectation(state.amplitudes(), exec);
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw structural_error("state dimensions differ");
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double fidelity_overlap(const StateVector& a, const StateVector& b) {
    return std::abs(inner_product(a, b));
}

}  // namespace entsim
