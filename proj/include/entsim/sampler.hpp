#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>

#include "entsim/circuit.hpp"
#include "entsim/simulator.hpp"
#include "entsim/state_vector.hpp"

namespace entsim {

// Identifies one reproducible random substream. Distinct stream indices
// under one master seed give independent sequences, so parallel sweeps can
// draw without coordinating.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

// Child substream for a tagged sub-task (axis, ensemble member, shot...).
SeedSpec derive_stream(SeedSpec parent, std::uint64_t tag);

// Deterministic generator over a SeedSpec. Uniform doubles are built from
// raw 53-bit draws rather than std::uniform_real_distribution, so the
// sequence is identical across standard library implementations.
class RandomStream {
public:
    explicit RandomStream(SeedSpec spec);

    std::uint64_t next_u64() { return gen_(); }
    double next_double();                       // uniform in [0, 1)
    std::uint64_t next_pow2(std::uint64_t n);   // uniform in [0, n), n a power of two

private:
    std::mt19937_64 gen_;
};

// Per-qubit readout flips (symmetric 0↔1) and per-gate depolarizing
// rates. Qubits without an entry are noiseless. `device_defaults` carries
// the ibmq-ourense q0/q1 calibration numbers.
struct NoiseModel {
    bool enabled = false;
    std::map<int, double> readout_flip;
    std::map<int, double> gate_depolarizing_1q;
    double gate_depolarizing_2q = 0.0;

    static NoiseModel none();
    static NoiseModel device_defaults();

    double readout(int qubit) const;
    double depol_1q(int qubit) const;
    void validate() const;  // all probabilities in [0, 1]
};

// Outcome histogram of one sampling run. Keys all share one length (the
// number of measured qubits) and values sum to `shots`.
struct Counts {
    long long shots = 0;
    std::map<std::string, long long> table;

    int key_length() const;  // structural_error on inconsistent keys
    void check() const;
};

// Multinomial draw from the exact marginal of `state`, inverse-CDF with
// one uniform per shot; readout flips applied per measured bit when noise
// is enabled. Bit-deterministic for a fixed SeedSpec.
Counts sample_counts(const StateVector& state, std::span<const int> measured_qubits,
                     long long shots, SeedSpec seed, const NoiseModel& noise);

// One stochastic trajectory: after each gate, with the configured
// depolarizing probability, a uniformly random Pauli string (I included)
// hits the touched qubits.
StateVector run_noisy_circuit(const CircuitIR& circuit, const NoiseModel& noise, SeedSpec seed);
StateVector run_noisy_circuit(const CircuitIR& circuit, const NoiseModel& noise,
                              RandomStream& stream);

// Runs a circuit and samples it. With depolarizing noise active each shot
// gets its own trajectory; otherwise one exact state is sampled.
Counts sample_circuit_counts(const CircuitIR& circuit, std::span<const int> measured_qubits,
                             long long shots, SeedSpec seed, const NoiseModel& noise);

// (N₀ − N₁)/shots for one key position.
double mean_from_counts(const Counts& counts, int bit_position);

// (N₀₀ − N₀₁ − N₁₀ + N₁₁)/shots; keys must be 2 bits.
double parity_from_counts(const Counts& counts);

// Σ (−1)^{ones(key)}·count / shots for keys of any length.
double full_parity_from_counts(const Counts& counts);

}  // namespace entsim
