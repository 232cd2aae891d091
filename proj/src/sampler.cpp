#include "entsim/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "entsim/common.hpp"

namespace entsim {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b * 0xBF58476D1CE4E5B9ULL + 0x2545F4914F6CDD1DULL));
}

}  // namespace

SeedSpec derive_stream(SeedSpec parent, std::uint64_t tag) {
    return {parent.master_seed, mix64(parent.stream_index, tag)};
}

RandomStream::RandomStream(SeedSpec spec)
    : gen_(mix64(spec.master_seed, spec.stream_index)) {}

double RandomStream::next_double() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::next_pow2(std::uint64_t n) {
    return gen_() & (n - 1);
}

NoiseModel NoiseModel::none() { return NoiseModel{}; }

NoiseModel NoiseModel::device_defaults() {
    NoiseModel m;
    m.enabled = true;
    m.readout_flip = {{0, 1.90e-2}, {1, 3.70e-2}};
    m.gate_depolarizing_1q = {{0, 4.18e-4}, {1, 3.88e-4}};
    m.gate_depolarizing_2q = 0.0;
    return m;
}

double NoiseModel::readout(int qubit) const {
    if (!enabled) return 0.0;
    const auto it = readout_flip.find(qubit);
    return it == readout_flip.end() ? 0.0 : it->second;
}

double NoiseModel::depol_1q(int qubit) const {
    if (!enabled) return 0.0;
    const auto it = gate_depolarizing_1q.find(qubit);
    return it == gate_depolarizing_1q.end() ? 0.0 : it->second;
}

void NoiseModel::validate() const {
    auto check = [](double p) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw config_error("noise probability outside [0, 1]");
        }
    };
    for (const auto& [q, p] : readout_flip) check(p);
    for (const auto& [q, p] : gate_depolarizing_1q) check(p);
    check(gate_depolarizing_2q);
}

int Counts::key_length() const {
    if (table.empty()) throw structural_error("counts table is empty");
    const std::size_t len = table.begin()->first.size();
    for (const auto& [key, n] : table) {
        if (key.size() != len) throw structural_error("counts keys have mixed lengths");
    }
    return static_cast<int>(len);
}

void Counts::check() const {
    key_length();
    long long total = 0;
    for (const auto& [key, n] : table) {
        if (n < 0) throw structural_error("negative count");
        total += n;
    }
    if (total != shots) throw structural_error("counts do not sum to shots");
}

namespace {

// Maps a flat outcome index to its key string (first measured qubit is the
// leftmost character).
std::string outcome_key(std::size_t outcome, std::size_t n_bits) {
    std::string key(n_bits, '0');
    for (std::size_t j = 0; j < n_bits; ++j) {
        if ((outcome >> (n_bits - 1 - j)) & 1u) key[j] = '1';
    }
    return key;
}

std::size_t draw_outcome(const std::vector<double>& cumulative, RandomStream& stream) {
    const double u = stream.next_double() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= cumulative.size()) idx = cumulative.size() - 1;
    return idx;
}

std::size_t apply_readout_flips(std::size_t outcome, std::span<const int> measured_qubits,
                                const NoiseModel& noise, RandomStream& stream) {
    const std::size_t m = measured_qubits.size();
    for (std::size_t j = 0; j < m; ++j) {
        const double p = noise.readout(measured_qubits[j]);
        if (p > 0.0 && stream.next_double() < p) {
            outcome ^= std::size_t{1} << (m - 1 - j);
        }
    }
    return outcome;
}

std::vector<double> cumulative_table(const std::vector<double>& probs) {
    std::vector<double> cum(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cum[i] = acc;
    }
    return cum;
}

bool has_depolarizing(const NoiseModel& noise) {
    if (!noise.enabled) return false;
    if (noise.gate_depolarizing_2q > 0.0) return true;
    for (const auto& [q, p] : noise.gate_depolarizing_1q) {
        if (p > 0.0) return true;
    }
    return false;
}

void depolarize_after_gate(StateVector& state, const GateOp& op, const NoiseModel& noise,
                           RandomStream& stream) {
    const int arity = gate_arity(op.kind);
    const double p =
        arity == 1 ? noise.depol_1q(op.qubits[0]) : (noise.enabled ? noise.gate_depolarizing_2q : 0.0);
    if (p <= 0.0 || stream.next_double() >= p) return;
    const std::uint64_t paulis = stream.next_pow2(std::uint64_t{1} << (2 * arity));
    for (int j = 0; j < arity; ++j) {
        const int which = static_cast<int>((paulis >> (2 * j)) & 3u);
        if (which == 0) continue;
        kernels::apply_1q(state.amplitudes(), state.bit_position(op.qubits[j]),
                          pauli_matrix(which), Exec::auto_pick);
    }
}

}  // namespace

Counts sample_counts(const StateVector& state, std::span<const int> measured_qubits,
                     long long shots, SeedSpec seed, const NoiseModel& noise) {
    if (shots < 1) throw config_error("shots must be >= 1");
    noise.validate();
    const std::vector<double> probs = probability_vector(state, measured_qubits);
    const std::vector<double> cum = cumulative_table(probs);
    RandomStream stream(seed);

    Counts counts;
    counts.shots = shots;
    for (long long s = 0; s < shots; ++s) {
        std::size_t outcome = draw_outcome(cum, stream);
        outcome = apply_readout_flips(outcome, measured_qubits, noise, stream);
        ++counts.table[outcome_key(outcome, measured_qubits.size())];
    }
    return counts;
}

StateVector run_noisy_circuit(const CircuitIR& circuit, const NoiseModel& noise,
                              RandomStream& stream) {
    if (!noise.enabled) throw config_error("run_noisy_circuit requires an enabled noise model");
    noise.validate();
    StateVector state = init_zero_state(circuit.n_qubits);
    for (const GateOp& op : circuit.ops) {
        apply_gate_inplace(state, op);
        depolarize_after_gate(state, op, noise, stream);
    }
    state.check_normalized();
    return state;
}

StateVector run_noisy_circuit(const CircuitIR& circuit, const NoiseModel& noise, SeedSpec seed) {
    RandomStream stream(seed);
    return run_noisy_circuit(circuit, noise, stream);
}

Counts sample_circuit_counts(const CircuitIR& circuit, std::span<const int> measured_qubits,
                             long long shots, SeedSpec seed, const NoiseModel& noise) {
    if (!has_depolarizing(noise)) {
        return sample_counts(run_circuit(circuit), measured_qubits, shots, seed, noise);
    }
    if (shots < 1) throw config_error("shots must be >= 1");
    noise.validate();
    check_measured_subset(measured_qubits, circuit.n_qubits);
    RandomStream stream(seed);

    Counts counts;
    counts.shots = shots;
    for (long long s = 0; s < shots; ++s) {
        const StateVector state = run_noisy_circuit(circuit, noise, stream);
        const std::vector<double> cum = cumulative_table(probability_vector(state, measured_qubits));
        std::size_t outcome = draw_outcome(cum, stream);
        outcome = apply_readout_flips(outcome, measured_qubits, noise, stream);
        ++counts.table[outcome_key(outcome, measured_qubits.size())];
    }
    return counts;
}

double mean_from_counts(const Counts& counts, int bit_position) {
    const int len = counts.key_length();
    if (bit_position < 0 || bit_position >= len) {
        throw structural_error("bit position out of range for counts keys");
    }
    long long n0 = 0, n1 = 0;
    for (const auto& [key, n] : counts.table) {
        if (key[static_cast<std::size_t>(bit_position)] == '0') {
            n0 += n;
        } else {
            n1 += n;
        }
    }
    return static_cast<double>(n0 - n1) / static_cast<double>(counts.shots);
}

double parity_from_counts(const Counts& counts) {
    if (counts.key_length() != 2) {
        throw structural_error("parity_from_counts requires 2-bit keys");
    }
    return full_parity_from_counts(counts);
}

double full_parity_from_counts(const Counts& counts) {
    counts.key_length();
    long long signed_sum = 0;
    for (const auto& [key, n] : counts.table) {
        const auto ones = std::count(key.begin(), key.end(), '1');
        signed_sum += (ones % 2 == 0) ? n : -n;
    }
    return static_cast<double>(signed_sum) / static_cast<double>(counts.shots);
}

}  // namespace entsim
