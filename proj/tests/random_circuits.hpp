#pragma once

// Seeded random circuit generation shared by the unit and acceptance
// suites.

#include <numbers>
#include <random>

#include "entsim/circuit.hpp"

namespace testgen {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Distinct qubit indices for one gate.
inline std::vector<int> pick_qubits(std::mt19937_64& rng, int n, int arity) {
    std::vector<int> qubits;
    while (static_cast<int>(qubits.size()) < arity) {
        const int q = uniform_int(rng, 0, n - 1);
        bool seen = false;
        for (int other : qubits) seen = seen || other == q;
        if (!seen) qubits.push_back(q);
    }
    return qubits;
}

inline entsim::GateOp random_gate(std::mt19937_64& rng, int n_qubits, bool allow_multi) {
    const double pi = std::numbers::pi;
    const double two_pi = 2.0 * pi;
    const int max_kind = (allow_multi && n_qubits >= 3) ? 9 : (allow_multi && n_qubits >= 2 ? 7 : 5);
    switch (uniform_int(rng, 0, max_kind)) {
        case 0:
            return entsim::GateOp::u3(uniform_int(rng, 0, n_qubits - 1), uniform(rng, 0.0, pi),
                                      uniform(rng, 0.0, two_pi), uniform(rng, 0.0, two_pi));
        case 1: return entsim::GateOp::h(uniform_int(rng, 0, n_qubits - 1));
        case 2: return entsim::GateOp::x(uniform_int(rng, 0, n_qubits - 1));
        case 3: return entsim::GateOp::rx(uniform_int(rng, 0, n_qubits - 1), uniform(rng, -pi, pi));
        case 4: return entsim::GateOp::ry(uniform_int(rng, 0, n_qubits - 1), uniform(rng, -pi, pi));
        case 5: return entsim::GateOp::rz(uniform_int(rng, 0, n_qubits - 1), uniform(rng, -pi, pi));
        case 6: {
            const auto q = pick_qubits(rng, n_qubits, 2);
            return entsim::GateOp::cnot(q[0], q[1]);
        }
        case 7: {
            const auto q = pick_qubits(rng, n_qubits, 2);
            return entsim::GateOp::ch(q[0], q[1]);
        }
        case 8: {
            const auto q = pick_qubits(rng, n_qubits, 2);
            return entsim::GateOp::swap_gate(q[0], q[1]);
        }
        default: {
            const auto q = pick_qubits(rng, n_qubits, 3);
            return entsim::GateOp::ccx(q[0], q[1], q[2]);
        }
    }
}

inline entsim::CircuitIR random_circuit(std::mt19937_64& rng, int n_qubits, int n_gates,
                                        bool allow_multi = true) {
    entsim::CircuitIR c{n_qubits, {}};
    for (int i = 0; i < n_gates; ++i) c.append(random_gate(rng, n_qubits, allow_multi));
    return c;
}

}  // namespace testgen
