#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entsim/circuits.hpp"
#include "entsim/common.hpp"
#include "entsim/protocols.hpp"
#include "entsim/simulator.hpp"
#include "random_circuits.hpp"

using namespace entsim;

namespace {

constexpr double kPi = std::numbers::pi;

MeasureOptions exact_options() {
    MeasureOptions o;
    o.mode = Mode::exact;
    return o;
}

MeasureOptions sampled_options(long long shots, std::uint64_t seed) {
    MeasureOptions o;
    o.mode = Mode::sampled;
    o.shots_per_axis = shots;
    o.seed = SeedSpec{seed, 0};
    return o;
}

MixedEnsemble bell_mixture(double omega, long long total_shots = 8192) {
    MixedEnsemble e;
    e.members.push_back({build_bell_circuit(BellSign::plus), omega});
    e.members.push_back({build_bell_circuit(BellSign::minus), 1.0 - omega});
    e.total_shots = total_shots;
    return e;
}

}  // namespace

TEST_CASE("z needs no prerotation") { CHECK(prerotation_ops(0, Axis::z).empty()); }

TEST_CASE("x prerotation maps |+> onto |0>") {
    CircuitIR circuit{1, {}};
    circuit.append(GateOp::h(0));
    for (const GateOp& op : prerotation_ops(0, Axis::x)) circuit.append(op);
    CHECK(z_expectation(run_circuit(circuit), 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("y prerotation maps (|0>+i|1>)/sqrt2 onto |0>") {
    CircuitIR circuit{1, {}};
    circuit.append(GateOp::rx(0, -kPi / 2.0));  // prepares (|0⟩ + i|1⟩)/√2
    for (const GateOp& op : prerotation_ops(0, Axis::y)) circuit.append(op);
    CHECK(z_expectation(run_circuit(circuit), 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean spin of the trivial cat is the north pole") {
    const MeanSpinEstimate est =
        estimate_mean_spin(build_cat_circuit(2, 0.0, 0.0), 0, exact_options());
    CHECK(std::abs(est.spin.x) < 1e-12);
    CHECK(std::abs(est.spin.y) < 1e-12);
    CHECK(est.spin.z == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean spin vanishes on the maximally entangled cat") {
    const MeanSpinEstimate est =
        estimate_mean_spin(build_cat_circuit(2, kPi / 2.0, 0.0), 0, exact_options());
    CHECK(std::abs(est.spin.x) < 1e-12);
    CHECK(std::abs(est.spin.y) < 1e-12);
    CHECK(std::abs(est.spin.z) < 1e-12);
}

TEST_CASE("single-qubit mean spin is the Bloch vector") {
    std::mt19937_64 rng(301);
    for (int trial = 0; trial < 20; ++trial) {
        const double theta = testgen::uniform(rng, 0.0, kPi);
        const double phi = testgen::uniform(rng, 0.0, 2.0 * kPi);
        CircuitIR circuit{1, {}};
        circuit.append(GateOp::u3(0, theta, phi, 0.0));
        const MeanSpinEstimate est = estimate_mean_spin(circuit, 0, exact_options());
        CHECK(est.spin.x == doctest::Approx(std::sin(theta) * std::cos(phi)).epsilon(1e-10));
        CHECK(est.spin.y == doctest::Approx(std::sin(theta) * std::sin(phi)).epsilon(1e-10));
        CHECK(est.spin.z == doctest::Approx(std::cos(theta)).epsilon(1e-10));
        CHECK(est.spin.magnitude() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("entanglement from mean spin") {
    CHECK(entanglement_from_mean_spin({0.0, 0.0, 1.0}) == 0.0);
    CHECK(entanglement_from_mean_spin({0.0, 0.0, 0.0}) == 0.5);
    for (double theta : {0.3, 1.1, 2.0}) {
        CHECK(entanglement_from_mean_spin({0.0, 0.0, std::cos(theta)}) ==
              doctest::Approx(0.5 * (1.0 - std::abs(std::cos(theta)))).epsilon(1e-15));
    }
    // slight overshoot clamps to a nonnegative measure
    CHECK(entanglement_from_mean_spin({1.02, 0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(entanglement_from_mean_spin({1.2, 0.0, 0.0}), numerical_error);
}

TEST_CASE("closed-form cat entanglement") {
    CHECK(analytic_cat(0.0) == 0.0);
    CHECK(analytic_cat(kPi / 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(analytic_cat(kPi / 3.0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("closed-form werner entanglement") {
    CHECK(analytic_werner(0.0, WernerRole::third) == 0.0);
    CHECK(analytic_werner(0.0, WernerRole::first_or_second) ==
          doctest::Approx(0.5).epsilon(1e-15));
    CHECK(analytic_werner(kPi / 2.0, WernerRole::first_or_second) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("closed-form mixed-bell entanglement") {
    CHECK(analytic_mixed_bell(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(analytic_mixed_bell(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(analytic_mixed_bell(0.25) ==
          doctest::Approx(0.5 * (1.0 - std::sqrt(3.0) / 2.0)).epsilon(1e-12));
    CHECK(analytic_mixed_bell(0.25) == doctest::Approx(0.0669872981077807).epsilon(1e-10));
}

TEST_CASE("shot allocation follows the largest remainder") {
    const std::vector<double> half{0.5, 0.5};
    CHECK(allocate_shots(half, 8192) == std::vector<long long>{4096, 4096});
    const std::vector<double> skew{0.125, 0.875};
    CHECK(allocate_shots(skew, 8192) == std::vector<long long>{1024, 7168});
    const std::vector<double> thirds{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    CHECK(allocate_shots(thirds, 10) == std::vector<long long>{4, 3, 3});
}

TEST_CASE("shot allocation always sums to the total") {
    std::mt19937_64 rng(307);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = testgen::uniform_int(rng, 1, 6);
        std::vector<double> raw(static_cast<std::size_t>(k));
        double sum = 0.0;
        for (double& w : raw) {
            w = testgen::uniform(rng, 0.01, 1.0);
            sum += w;
        }
        for (double& w : raw) w /= sum;
        // re-normalize the last weight so the list sums to 1 exactly enough
        const long long total = testgen::uniform_int(rng, k, 20000);
        const std::vector<long long> alloc = allocate_shots(raw, total);
        long long got = 0;
        for (long long a : alloc) got += a;
        CHECK(got == total);
    }
    const std::vector<double> bad{0.7, 0.7};
    CHECK_THROWS_AS(allocate_shots(bad, 10), config_error);
    const std::vector<double> ok{0.5, 0.5};
    CHECK_THROWS_AS(allocate_shots(ok, 1), config_error);
}

TEST_CASE("correlator prerotations reproduce the Bell parities") {
    const std::vector<int> partner{1};
    struct Case {
        BellSign sign;
        SigmaAxis axis;
        double expected;
    };
    for (const Case& c : {Case{BellSign::plus, SigmaAxis::sigma_x, 1.0},
                          Case{BellSign::minus, SigmaAxis::sigma_x, -1.0},
                          Case{BellSign::plus, SigmaAxis::sigma_y, 0.0},
                          Case{BellSign::minus, SigmaAxis::sigma_y, 0.0}}) {
        CircuitIR circuit = build_bell_circuit(c.sign);
        for (const GateOp& op : correlator_prerotations(c.axis, 0, partner)) circuit.append(op);
        CHECK(parity_expectation(run_circuit(circuit)) ==
              doctest::Approx(c.expected).epsilon(1e-12));
    }
}

TEST_CASE("exact correlators agree with the prerotation route") {
    // the estimate uses direct operator expectations in exact mode; the
    // prerotation circuits must give the same numbers
    std::mt19937_64 rng(401);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = testgen::uniform_int(rng, 2, 4);
        CircuitIR circuit = build_cat_circuit(n, testgen::uniform(rng, 0.0, kPi),
                                              testgen::uniform(rng, 0.0, 2.0 * kPi));
        for (int q = 0; q < n; ++q) {
            circuit.append(GateOp::rz(q, testgen::uniform(rng, -kPi, kPi)));
        }
        MixedEnsemble single;
        single.members.push_back({circuit, 1.0});
        const int target = testgen::uniform_int(rng, 0, n - 1);
        const EntanglementEstimate est =
            estimate_rank2_entanglement(single, target, exact_options());

        std::vector<int> partners;
        for (int q = 0; q < n; ++q) {
            if (q != target) partners.push_back(q);
        }
        const SigmaAxis axes[2] = {SigmaAxis::sigma_x, SigmaAxis::sigma_y};
        for (int a = 0; a < 2; ++a) {
            CircuitIR rotated = circuit;
            for (const GateOp& op : correlator_prerotations(axes[a], target, partners)) {
                rotated.append(op);
            }
            const double via_prerotation = parity_expectation(run_circuit(rotated));
            CHECK(std::abs(est.components[static_cast<std::size_t>(a)] - via_prerotation) <
                  1e-12);
        }
    }
}

TEST_CASE("rank-2 estimate at the pure endpoints") {
    const EntanglementEstimate at_zero =
        estimate_rank2_entanglement(bell_mixture(0.0), 0, exact_options());
    CHECK(at_zero.components[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(at_zero.components[1]) < 1e-12);
    CHECK(at_zero.e_measured == doctest::Approx(0.5).epsilon(1e-12));

    const EntanglementEstimate at_half =
        estimate_rank2_entanglement(bell_mixture(0.5), 0, exact_options());
    CHECK(at_half.components[0] == 0.0);
    CHECK(at_half.e_measured == 0.0);

    const EntanglementEstimate at_quarter =
        estimate_rank2_entanglement(bell_mixture(0.25), 0, exact_options());
    CHECK(at_quarter.components[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(at_quarter.e_measured == doctest::Approx(analytic_mixed_bell(0.25)).epsilon(1e-12));
}

TEST_CASE("rank-2 estimate matches the closed form across the omega grid") {
    for (int k = 0; k <= 8; ++k) {
        const double omega = 0.125 * k;
        const EntanglementEstimate est =
            estimate_rank2_entanglement(bell_mixture(omega), 0, exact_options());
        CHECK(std::abs(est.e_measured - analytic_mixed_bell(omega)) < 1e-12);
    }
}

TEST_CASE("rank-2 estimate sees the imaginary-phase Bell state") {
    // (|00⟩ + i|11⟩)/√2 has ⟨Σˣ⟩ = 0 and ⟨Σʸ⟩ = 1.
    CircuitIR circuit = build_bell_circuit(BellSign::plus);
    circuit.append(GateOp::rz(0, kPi / 2.0));
    MixedEnsemble ensemble;
    ensemble.members.push_back({circuit, 1.0});
    const EntanglementEstimate est = estimate_rank2_entanglement(ensemble, 0, exact_options());
    CHECK(std::abs(est.components[0]) < 1e-12);
    CHECK(est.components[1] == doctest::Approx(1.0).epsilon(1e-12));
    // |⟨Σʸ⟩| sits an ulp under 1 (the π/4 phases round), and the square
    // root amplifies that to ~1e-8 in E
    CHECK(est.e_measured == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("rank-2 protocol rejects states off its support") {
    MixedEnsemble ensemble;
    CircuitIR lopsided{2, {}};
    lopsided.append(GateOp::h(0));  // (|00⟩+|10⟩)/√2 leaves the cat span
    ensemble.members.push_back({lopsided, 1.0});
    CHECK_THROWS_AS(estimate_rank2_entanglement(ensemble, 0, exact_options()),
                    protocol_domain_error);
}

TEST_CASE("rank-2 sampled estimate stays close at moderate shots") {
    for (double omega : {0.0, 0.25, 0.5, 0.875}) {
        const EntanglementEstimate est =
            estimate_rank2_entanglement(bell_mixture(omega), 0, sampled_options(0, 5));
        CHECK(est.e_measured >= 0.0);
        CHECK(est.e_measured <= 0.5);
        CHECK(std::abs(est.e_measured - analytic_mixed_bell(omega)) < 0.05);
        CHECK(est.shots_used == 8192);
    }
}

TEST_CASE("oracle entanglement on known states") {
    CHECK(oracle_entanglement_pure(run_circuit(build_bell_circuit(BellSign::plus)), 0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    StateVector product = init_zero_state(3);
    apply_gate_inplace(product, GateOp::u3(0, 1.2, 0.3, 0.0));
    apply_gate_inplace(product, GateOp::u3(2, 2.2, 4.3, 1.0));
    for (int q = 0; q < 3; ++q) {
        CHECK(oracle_entanglement_pure(product, q) == doctest::Approx(0.0).epsilon(1e-12));
    }
    const StateVector werner = run_circuit(build_werner_circuit(kPi / 2.0));
    CHECK(oracle_entanglement_pure(werner, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(oracle_entanglement_pure(werner, 0) ==
          doctest::Approx(analytic_werner(kPi / 2.0, WernerRole::first_or_second))
              .epsilon(1e-12));
}

TEST_CASE("exact protocol agrees with the purity oracle on random circuits") {
    std::mt19937_64 rng(313);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = testgen::uniform_int(rng, 2, 5);
        const CircuitIR circuit = testgen::random_circuit(rng, n, 20);
        const StateVector state = run_circuit(circuit);
        for (int q = 0; q < n; ++q) {
            const MeanSpinEstimate est = estimate_mean_spin(circuit, q, exact_options());
            const double via_protocol = entanglement_from_mean_spin(est.spin);
            const double via_oracle = oracle_entanglement_pure(state, q);
            CHECK(std::abs(via_protocol - via_oracle) < 1e-10);
        }
    }
}

TEST_CASE("flipping the prerotation direction leaves |<sigma>| unchanged") {
    std::mt19937_64 rng(317);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = testgen::uniform_int(rng, 1, 4);
        const CircuitIR base = testgen::random_circuit(rng, n, 10);
        const int qubit = testgen::uniform_int(rng, 0, n - 1);

        const MeanSpinEstimate standard = estimate_mean_spin(base, qubit, exact_options());

        CircuitIR x_flipped = base;
        x_flipped.append(GateOp::ry(qubit, kPi / 2.0));
        CircuitIR y_flipped = base;
        y_flipped.append(GateOp::rx(qubit, -kPi / 2.0));
        const double x_other = z_expectation(run_circuit(x_flipped), qubit);
        const double y_other = z_expectation(run_circuit(y_flipped), qubit);

        CHECK(std::abs(std::abs(standard.spin.x) - std::abs(x_other)) < 1e-12);
        CHECK(std::abs(std::abs(standard.spin.y) - std::abs(y_other)) < 1e-12);
    }
}

TEST_CASE("estimates stay inside [0, 0.5] in both modes") {
    std::mt19937_64 rng(331);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = testgen::uniform_int(rng, 1, 4);
        const CircuitIR circuit = testgen::random_circuit(rng, n, 12);
        const int qubit = testgen::uniform_int(rng, 0, n - 1);

        const double exact = entanglement_from_mean_spin(
            estimate_mean_spin(circuit, qubit, exact_options()).spin);
        CHECK(exact >= 0.0);
        CHECK(exact <= 0.5);

        MeasureOptions opts = sampled_options(256, rng());
        opts.noise = NoiseModel::device_defaults();
        const double sampled =
            entanglement_from_mean_spin(estimate_mean_spin(circuit, qubit, opts).spin);
        CHECK(sampled >= 0.0);
        CHECK(sampled <= 0.5);
    }
}

TEST_CASE("cat entanglement is the same whichever qubit is measured") {
    for (double theta : {0.4, kPi / 2.0, 2.7}) {
        for (int n : {2, 3, 4}) {
            const CircuitIR circuit = build_cat_circuit(n, theta, 0.0);
            const double first = entanglement_from_mean_spin(
                estimate_mean_spin(circuit, 0, exact_options()).spin);
            for (int q = 1; q < n; ++q) {
                const double other = entanglement_from_mean_spin(
                    estimate_mean_spin(circuit, q, exact_options()).spin);
                CHECK(std::abs(first - other) < 1e-12);
            }
        }
    }
}

TEST_CASE("mixed-bell symmetry omega <-> 1-omega") {
    // dyadic grid: the reflection is exact, so the values must be equal bitwise
    for (int k = 0; k <= 8; ++k) {
        const double omega = 0.125 * k;
        CHECK(analytic_mixed_bell(omega) == analytic_mixed_bell(1.0 - omega));
    }
    std::mt19937_64 rng(337);
    for (int trial = 0; trial < 200; ++trial) {
        const double omega = testgen::uniform(rng, 0.0, 1.0);
        const double reflected = 1.0 - omega;
        if (1.0 - reflected == omega) {
            CHECK(analytic_mixed_bell(omega) == analytic_mixed_bell(reflected));
        } else {
            // the reflection itself rounded; equality holds to an ulp-scale slack
            CHECK(std::abs(analytic_mixed_bell(omega) - analytic_mixed_bell(reflected)) < 1e-15);
        }
    }
}

TEST_CASE("cat symmetry theta <-> pi-theta") {
    for (double theta : {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi}) {
        const double reflected = kPi - theta;
        REQUIRE(kPi - reflected == theta);  // these reflections are exact
        CHECK(analytic_cat(theta) == analytic_cat(reflected));
    }
    std::mt19937_64 rng(347);
    for (int trial = 0; trial < 200; ++trial) {
        const double theta = testgen::uniform(rng, 0.0, kPi);
        const double reflected = kPi - theta;
        if (kPi - reflected == theta) {
            CHECK(analytic_cat(theta) == analytic_cat(reflected));
        } else {
            // the reflection itself rounded; only ulp-scale slack is possible
            CHECK(std::abs(analytic_cat(theta) - analytic_cat(reflected)) < 1e-15);
        }
    }
}

TEST_CASE("rank-2 estimate validates its inputs") {
    CHECK_THROWS_AS(estimate_rank2_entanglement(MixedEnsemble{}, 0, exact_options()),
                    config_error);
    MixedEnsemble bad = bell_mixture(0.3);
    bad.members[1].weight = 0.3;  // no longer sums to 1
    CHECK_THROWS_AS(estimate_rank2_entanglement(bad, 0, exact_options()), config_error);
    CHECK_THROWS_AS(estimate_rank2_entanglement(bell_mixture(0.5), 2, exact_options()),
                    structural_error);
}
