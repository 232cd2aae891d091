#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "entsim/gates.hpp"

namespace entsim {

// Dense amplitude vector of an n-qubit pure state. Ket labels read
// |q0 q1 ... q_{n-1}⟩ left to right, with q0 the most significant bit of
// the amplitude index, so |001⟩ is index 1 on three qubits.
//
// Values are treated as immutable once shared; mutation happens only on
// exclusively-owned instances (see apply_gate_inplace).
class StateVector {
public:
    static constexpr int kMaxQubits = 24;  // keeps the dense vector under 512 MB

    explicit StateVector(int n_qubits);  // |00...0⟩
    StateVector(int n_qubits, std::vector<cplx> amplitudes);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> amplitudes() { return amps_; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }

    double norm_sqr() const;
    void check_normalized(double tol = 1e-12) const;  // throws numerical_error

    // Bit of `qubit` inside amplitude index i.
    int bit(std::size_t index, int qubit) const {
        return static_cast<int>((index >> (n_qubits_ - 1 - qubit)) & 1u);
    }
    std::size_t mask(int qubit) const {
        return std::size_t{1} << (n_qubits_ - 1 - qubit);
    }
    int bit_position(int qubit) const { return n_qubits_ - 1 - qubit; }

private:
    int n_qubits_;
    std::vector<cplx> amps_;
};

StateVector init_zero_state(int n_qubits);

}  // namespace entsim
