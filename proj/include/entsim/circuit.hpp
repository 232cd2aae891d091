#pragma once

#include <vector>

#include "entsim/gates.hpp"

namespace entsim {

// Ordered gate sequence over a fixed register. An empty circuit is the
// identity.
struct CircuitIR {
    int n_qubits = 0;
    std::vector<GateOp> ops;

    bool operator==(const CircuitIR&) const = default;

    CircuitIR& append(GateOp op);  // validates against n_qubits
};

// qubit indices distinct and in range; arity and parameter counts match.
void validate_op(const GateOp& op, int n_qubits);

// Longest dependency chain through shared qubits.
long long circuit_depth(const CircuitIR& circuit);

}  // namespace entsim
