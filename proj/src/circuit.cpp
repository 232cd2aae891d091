#include "entsim/circuit.hpp"

#include <algorithm>
#include <string>

#include "entsim/common.hpp"

namespace entsim {

void validate_op(const GateOp& op, int n_qubits) {
    const std::size_t arity = static_cast<std::size_t>(gate_arity(op.kind));
    if (op.qubits.size() != arity) {
        throw structural_error("gate expects " + std::to_string(arity) + " qubits, got " +
                               std::to_string(op.qubits.size()));
    }
    if (op.params.size() != static_cast<std::size_t>(gate_param_count(op.kind))) {
        throw structural_error("wrong parameter count for gate");
    }
    for (std::size_t i = 0; i < op.qubits.size(); ++i) {
        const int q = op.qubits[i];
        if (q < 0 || q >= n_qubits) {
            throw structural_error("qubit index " + std::to_string(q) +
                                   " out of range for " + std::to_string(n_qubits) +
                                   "-qubit circuit");
        }
        for (std::size_t j = i + 1; j < op.qubits.size(); ++j) {
            if (op.qubits[j] == q) {
                throw structural_error("duplicate qubit index " + std::to_string(q));
            }
        }
    }
}

CircuitIR& CircuitIR::append(GateOp op) {
    validate_op(op, n_qubits);
    ops.push_back(std::move(op));
    return *this;
}

long long circuit_depth(const CircuitIR& circuit) {
    std::vector<long long> busy(static_cast<std::size_t>(circuit.n_qubits), 0);
    long long depth = 0;
    for (const GateOp& op : circuit.ops) {
        long long t = 0;
        for (int q : op.qubits) t = std::max(t, busy[static_cast<std::size_t>(q)]);
        ++t;
        for (int q : op.qubits) busy[static_cast<std::size_t>(q)] = t;
        depth = std::max(depth, t);
    }
    return depth;
}

}  // namespace entsim
