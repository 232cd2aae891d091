#include "entsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <numeric>
#include <string>

#include "entsim/common.hpp"
#include "entsim/simulator.hpp"

namespace entsim {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kComponentSlack = 0.05;
constexpr double kSupportTolerance = 1e-9;

double component_std_err(double value, long long shots) {
    const double var = std::max(0.0, 1.0 - value * value);
    return std::sqrt(var / static_cast<double>(shots));
}

}  // namespace

double MeanSpin::magnitude() const { return std::sqrt(x * x + y * y + z * z); }

std::vector<GateOp> prerotation_ops(int qubit, Axis axis) {
    switch (axis) {
        case Axis::z:
            return {};
        case Axis::x:
            return {GateOp::ry(qubit, -kHalfPi)};  // exp(+iπ/4 σʸ)
        case Axis::y:
            return {GateOp::rx(qubit, kHalfPi)};   // exp(-iπ/4 σˣ)
    }
    throw structural_error("unknown axis");
}

std::vector<GateOp> correlator_prerotations(SigmaAxis axis, int target,
                                            std::span<const int> partners) {
    std::vector<int> qubits(partners.begin(), partners.end());
    qubits.push_back(target);
    std::sort(qubits.begin(), qubits.end());
    for (std::size_t i = 1; i < qubits.size(); ++i) {
        if (qubits[i] == qubits[i - 1]) {
            throw structural_error("target must be distinct from partners");
        }
    }
    std::vector<GateOp> ops;
    ops.reserve(qubits.size());
    for (int q : qubits) {
        if (axis == SigmaAxis::sigma_y && q == target) {
            ops.push_back(GateOp::rx(q, kHalfPi));
        } else {
            ops.push_back(GateOp::ry(q, -kHalfPi));
        }
    }
    return ops;
}

MeanSpinEstimate estimate_mean_spin(const CircuitIR& circuit, int qubit,
                                    const MeasureOptions& options) {
    if (qubit < 0 || qubit >= circuit.n_qubits) {
        throw structural_error("target qubit out of range");
    }
    if (options.mode == Mode::sampled && options.shots_per_axis < 1) {
        throw config_error("shots_per_axis must be >= 1 in sampled mode");
    }

    MeanSpinEstimate result;
    const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
    double* slots[3] = {&result.spin.x, &result.spin.y, &result.spin.z};
    for (int a = 0; a < 3; ++a) {
        CircuitIR run = circuit;
        for (const GateOp& op : prerotation_ops(qubit, axes[a])) run.append(op);
        if (options.mode == Mode::exact) {
            *slots[a] = z_expectation(run_circuit(run), qubit);
        } else {
            const int measured[1] = {qubit};
            const Counts counts =
                sample_circuit_counts(run, measured, options.shots_per_axis,
                                      derive_stream(options.seed, static_cast<std::uint64_t>(a)),
                                      options.noise);
            *slots[a] = mean_from_counts(counts, 0);
            result.std_err[static_cast<std::size_t>(a)] =
                component_std_err(*slots[a], options.shots_per_axis);
            result.shots_used += options.shots_per_axis;
        }
    }
    return result;
}

double entanglement_from_mean_spin(const MeanSpin& spin) {
    for (double c : {spin.x, spin.y, spin.z}) {
        if (std::abs(c) > 1.0 + kComponentSlack) {
            throw numerical_error("mean-spin component " + std::to_string(c) +
                                  " outside statistical slack");
        }
    }
    return 0.5 * (1.0 - std::min(1.0, spin.magnitude()));
}

double analytic_cat(double theta) {
    // (1 - |cos θ|)/2, evaluated as sin of the fold |π/2 - θ| so that θ and
    // π - θ land on the same point whenever the reflection is exact.
    return 0.5 * (1.0 - std::sin(std::abs(kHalfPi - theta)));
}

double analytic_werner(double theta, WernerRole role) {
    if (role == WernerRole::third) return analytic_cat(theta);
    const double c = std::cos(theta / 2.0);
    return 0.5 * c * c;
}

double analytic_mixed_bell(double omega) {
    return 0.5 * (1.0 - 2.0 * std::sqrt(omega * (1.0 - omega)));
}

std::vector<long long> allocate_shots(std::span<const double> weights, long long total) {
    if (weights.empty()) throw config_error("weight list must not be empty");
    if (total < static_cast<long long>(weights.size())) {
        throw config_error("total shots must be at least the number of weights");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0 && w <= 1.0)) throw config_error("weights must lie in [0, 1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw config_error("weights must sum to 1");

    std::vector<long long> alloc(weights.size());
    std::vector<double> remainder(weights.size());
    long long assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double quota = static_cast<double>(total) * weights[i];
        alloc[i] = static_cast<long long>(std::floor(quota));
        remainder[i] = quota - std::floor(quota);
        assigned += alloc[i];
    }
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return remainder[a] > remainder[b];
    });
    for (long long r = total - assigned, i = 0; r > 0; --r, ++i) {
        ++alloc[order[static_cast<std::size_t>(i)]];
    }
    return alloc;
}

namespace {

void check_rank2_support(const StateVector& state) {
    const std::size_t last = state.dim() - 1;
    for (std::size_t i = 1; i < last; ++i) {
        if (std::abs(state[i]) > kSupportTolerance) {
            throw protocol_domain_error(
                "ensemble member leaves the span of |0...0>, |1...1>; "
                "the rank-2 correlator measure is undefined there");
        }
    }
}

std::vector<int> partner_qubits(int n_qubits, int target) {
    std::vector<int> partners;
    partners.reserve(static_cast<std::size_t>(n_qubits) - 1);
    for (int q = 0; q < n_qubits; ++q) {
        if (q != target) partners.push_back(q);
    }
    return partners;
}

// Exact ⟨ψ|Σᵃ|ψ⟩ by applying the Pauli string directly. Pauli action is a
// signed amplitude permutation, so this route carries no trigonometric
// rounding; the prerotation route loses ~sqrt(ulp) right where |⟨Σ⟩| = 1.
double exact_string_parity(const CircuitIR& base, SigmaAxis axis, int target,
                           std::span<const int> partners) {
    const StateVector state = run_circuit(base);
    StateVector transformed = state;
    auto apply_pauli = [&](int qubit, int which) {
        kernels::apply_1q(transformed.amplitudes(), transformed.bit_position(qubit),
                          pauli_matrix(which), Exec::auto_pick);
    };
    apply_pauli(target, axis == SigmaAxis::sigma_y ? 2 : 1);
    for (int q : partners) apply_pauli(q, 1);
    return inner_product(state, transformed).real();
}

double sampled_string_parity(const CircuitIR& base, SigmaAxis axis, int target,
                             std::span<const int> partners, long long shots, SeedSpec seed,
                             const NoiseModel& noise) {
    CircuitIR run = base;
    for (const GateOp& op : correlator_prerotations(axis, target, partners)) run.append(op);
    std::vector<int> all(static_cast<std::size_t>(run.n_qubits));
    std::iota(all.begin(), all.end(), 0);
    const Counts counts = sample_circuit_counts(run, all, shots, seed, noise);
    return run.n_qubits == 2 ? parity_from_counts(counts) : full_parity_from_counts(counts);
}

}  // namespace

EntanglementEstimate estimate_rank2_entanglement(const MixedEnsemble& ensemble, int target,
                                                 const MeasureOptions& options) {
    if (ensemble.members.empty()) throw config_error("ensemble has no members");
    const int n = ensemble.members.front().circuit.n_qubits;
    std::vector<double> weights;
    weights.reserve(ensemble.members.size());
    for (const auto& member : ensemble.members) {
        if (member.circuit.n_qubits != n) {
            throw structural_error("ensemble members act on different register sizes");
        }
        weights.push_back(member.weight);
    }
    if (target < 0 || target >= n) throw structural_error("target qubit out of range");
    const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(wsum - 1.0) > 1e-12) throw config_error("ensemble weights must sum to 1");

    for (const auto& member : ensemble.members) {
        check_rank2_support(run_circuit(member.circuit));
    }

    const std::vector<int> partners = partner_qubits(n, target);
    EntanglementEstimate out;
    double corr[2] = {0.0, 0.0};
    double var[2] = {0.0, 0.0};
    const SigmaAxis axes[2] = {SigmaAxis::sigma_x, SigmaAxis::sigma_y};

    if (options.mode == Mode::exact) {
        for (std::size_t m = 0; m < ensemble.members.size(); ++m) {
            for (int a = 0; a < 2; ++a) {
                corr[a] += weights[m] *
                           exact_string_parity(ensemble.members[m].circuit, axes[a], target,
                                               partners);
            }
        }
    } else {
        const std::vector<long long> alloc = allocate_shots(weights, ensemble.total_shots);
        for (std::size_t m = 0; m < ensemble.members.size(); ++m) {
            if (alloc[m] == 0) continue;  // weight too small to earn a shot
            const long long split[2] = {(alloc[m] + 1) / 2, alloc[m] / 2};
            for (int a = 0; a < 2; ++a) {
                if (split[a] == 0) continue;
                const double parity = sampled_string_parity(
                    ensemble.members[m].circuit, axes[a], target, partners, split[a],
                    derive_stream(options.seed, 2 * m + static_cast<std::uint64_t>(a)),
                    options.noise);
                corr[a] += weights[m] * parity;
                var[a] += weights[m] * weights[m] * std::max(0.0, 1.0 - parity * parity) /
                          static_cast<double>(split[a]);
                out.shots_used += split[a];
            }
        }
    }

    const double x = corr[0];
    const double y = corr[1];
    double radicand = 1.0 - x * x - y * y;
    if (radicand < -1e-12) {
        std::cerr << "note: correlator magnitude exceeded 1, radicand " << radicand
                  << " clamped to 0 (estimate saturates at E = 0.5)\n";
    }
    radicand = std::clamp(radicand, 0.0, 1.0);
    const double r = std::sqrt(radicand);

    out.components = {x, y, 0.0};
    out.e_measured = 0.5 * (1.0 - r);
    if (options.mode == Mode::sampled) {
        if (r > 1e-12) {
            out.std_err = std::sqrt((x * x * var[0] + y * y * var[1]) / (4.0 * r * r));
        } else {
            out.std_err = 0.5 * std::sqrt(std::max(var[0], var[1]));
        }
    }
    return out;
}

double oracle_entanglement_pure(const StateVector& state, int qubit) {
    // E = (1 - sqrt(2 tr(ρ̂²) - 1))/2 for the trace-normalized ρ̂. For a
    // 2x2 ρ the radicand equals ((ρ00-ρ11)² + 4|ρ01|²)/tr(ρ)², which stays
    // exactly nonnegative; the literal 2·tr(ρ²)-1 cancels to ~ulp near the
    // maximally mixed point and its square root amplifies that to ~1e-8.
    const std::array<cplx, 4> rho = reduced_density_matrix(state, qubit);
    const double trace = rho[0].real() + rho[3].real();
    const double z = rho[0].real() - rho[3].real();
    const double m2 = (z * z + 4.0 * std::norm(rho[1])) / (trace * trace);
    const double modulus = std::sqrt(std::min(1.0, m2));
    return std::max(0.0, 0.5 * (1.0 - modulus));
}

EntanglementEstimate to_entanglement_estimate(const MeanSpinEstimate& est,
                                              std::optional<double> e_theory) {
    EntanglementEstimate out;
    out.components = {est.spin.x, est.spin.y, est.spin.z};
    out.e_measured = entanglement_from_mean_spin(est.spin);
    out.shots_used = est.shots_used;
    const double m = est.spin.magnitude();
    if (est.shots_used > 0) {
        if (m > 1e-12) {
            const double vx = est.std_err[0] * est.std_err[0];
            const double vy = est.std_err[1] * est.std_err[1];
            const double vz = est.std_err[2] * est.std_err[2];
            out.std_err = std::sqrt((est.spin.x * est.spin.x * vx + est.spin.y * est.spin.y * vy +
                                     est.spin.z * est.spin.z * vz) /
                                    (4.0 * m * m));
        } else {
            out.std_err =
                0.5 * std::max({est.std_err[0], est.std_err[1], est.std_err[2]});
        }
    }
    if (e_theory) {
        out.e_theory = e_theory;
        out.delta = std::abs(out.e_measured - *e_theory);
    }
    return out;
}

}  // namespace entsim
