#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "entsim/circuit.hpp"
#include "entsim/sampler.hpp"

namespace entsim {

enum class Axis { x, y, z };
enum class SigmaAxis { sigma_x, sigma_y };  // the Σ-string correlator settings
enum class Mode { exact, sampled };

// Common knobs for the measurement protocols. shots_per_axis follows the
// 1024-shots-per-setting convention; exact mode ignores it.
struct MeasureOptions {
    Mode mode = Mode::exact;
    long long shots_per_axis = 1024;
    SeedSpec seed{};
    NoiseModel noise{};
};

struct MeanSpin {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double magnitude() const;
};

struct MeanSpinEstimate {
    MeanSpin spin;
    std::array<double, 3> std_err{};  // ~ sqrt((1-c²)/shots) per component
    long long shots_used = 0;
};

// Final measurement result: spin components (or ⟨Σˣ⟩, ⟨Σʸ⟩, 0 for the
// rank-2 protocol), the measure E ∈ [0, 0.5], the matching closed form
// when one exists, and a first-order standard-error estimate (diagnostic,
// never asserted).
struct EntanglementEstimate {
    std::array<double, 3> components{};
    double e_measured = 0.0;
    std::optional<double> e_theory;
    std::optional<double> delta;
    double std_err = 0.0;
    long long shots_used = 0;
};

// Weighted ensemble of pure-state preparations, modelling a mixed state as
// its members are sampled in proportion to their weights.
struct MixedEnsemble {
    struct Member {
        CircuitIR circuit;
        double weight = 0.0;
    };
    std::vector<Member> members;
    long long total_shots = 8192;
};

// Basis-change ops that turn a σˣ or σʸ expectation into a computational
// z-readout: axis x applies exp(+iπ/4 σʸ), axis y applies exp(-iπ/4 σˣ),
// axis z needs nothing.
std::vector<GateOp> prerotation_ops(int qubit, Axis axis);

// Per-qubit basis changes for the Σ-string settings: ΣX rotates target and
// every partner by exp(+iπ/4 σʸ); ΣY uses exp(-iπ/4 σˣ) on the target and
// exp(+iπ/4 σʸ) on partners. Two qubits is the exercised case; larger
// partner sets are experimental.
std::vector<GateOp> correlator_prerotations(SigmaAxis axis, int target,
                                            std::span<const int> partners);

// Three runs of base circuit + prerotation + single-qubit readout.
MeanSpinEstimate estimate_mean_spin(const CircuitIR& circuit, int qubit,
                                    const MeasureOptions& options);

// E = (1 - min(1, |⟨σ⟩|)) / 2. Components may exceed 1 by at most 0.05
// statistical slack; beyond that a numerical_error is raised.
double entanglement_from_mean_spin(const MeanSpin& spin);

// Closed forms for the built-in experiments.
double analytic_cat(double theta);                        // (1 - |cos θ|)/2
enum class WernerRole { first_or_second, third };
double analytic_werner(double theta, WernerRole role);    // cos²(θ/2)/2 or (1-|cos θ|)/2
double analytic_mixed_bell(double omega);                 // (1 - 2√(ω(1-ω)))/2

// Largest-remainder split of `total` shots over the weights; sums exactly
// to total, ties broken by lowest index.
std::vector<long long> allocate_shots(std::span<const double> weights, long long total);

// Rank-2 mixed-state measure from weighted Σ-string correlators. Members
// must prepare states supported on |0...0⟩ and |1...1⟩ only (amplitude
// tolerance 1e-9), otherwise protocol_domain_error.
EntanglementEstimate estimate_rank2_entanglement(const MixedEnsemble& ensemble, int target,
                                                 const MeasureOptions& options);

// Independent reference: E = (1 - √(max(0, 2 tr(ρ²) - 1))) / 2 from the
// reduced density matrix.
double oracle_entanglement_pure(const StateVector& state, int qubit);

// Wraps a mean-spin estimate into the reporting struct, with first-order
// error propagation onto E.
EntanglementEstimate to_entanglement_estimate(const MeanSpinEstimate& est,
                                              std::optional<double> e_theory);

}  // namespace entsim
