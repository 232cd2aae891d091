#include "entsim/state_vector.hpp"

#include <cmath>
#include <string>

#include "entsim/common.hpp"
#include "entsim/kernels.hpp"

namespace entsim {

namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > StateVector::kMaxQubits) {
        throw config_error("qubit count must be in [1, " +
                           std::to_string(StateVector::kMaxQubits) + "], got " +
                           std::to_string(n_qubits));
    }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, cplx(0.0, 0.0));
    amps_[0] = cplx(1.0, 0.0);
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw structural_error("amplitude vector length does not match qubit count");
    }
    check_normalized();
}

double StateVector::norm_sqr() const {
    return kernels::sum_abs2(amps_, kernels::Exec::auto_pick);
}

void StateVector::check_normalized(double tol) const {
    const double n2 = norm_sqr();
    if (std::abs(n2 - 1.0) > tol) {
        throw numerical_error("state norm² deviates from 1 by " +
                              std::to_string(std::abs(n2 - 1.0)));
    }
}

StateVector init_zero_state(int n_qubits) { return StateVector(n_qubits); }

}  // namespace entsim
