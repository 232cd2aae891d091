#include "entsim/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "entsim/circuits.hpp"
#include "entsim/common.hpp"
#include "entsim/protocols.hpp"
#include "entsim/sampler.hpp"
#include "entsim/simulator.hpp"
#include "entsim/sweep.hpp"
#include "entsim/transpiler.hpp"

namespace entsim::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string bitstring_of(std::size_t index, int n_bits) {
    std::string s(static_cast<std::size_t>(n_bits), '0');
    for (int j = 0; j < n_bits; ++j) {
        if ((index >> (n_bits - 1 - j)) & 1u) s[static_cast<std::size_t>(j)] = '1';
    }
    return s;
}

struct SimulateArgs {
    std::string circuit_path;
    long long shots = 0;  // 0 = print the exact state
    std::uint64_t seed = 0;
    std::vector<int> measured;
    bool noise = false;
};

int cmd_simulate(const SimulateArgs& args) {
    const CircuitIR circuit = parse_circuit_text(read_file(args.circuit_path));
    const NoiseModel noise = args.noise ? NoiseModel::device_defaults() : NoiseModel::none();
    std::vector<int> measured = args.measured;
    if (measured.empty()) {
        for (int q = 0; q < circuit.n_qubits; ++q) measured.push_back(q);
    }
    if (args.shots == 0) {
        const StateVector state = run_circuit(circuit);
        std::cout << "# state amplitudes (nonzero)\n";
        for (std::size_t i = 0; i < state.dim(); ++i) {
            if (state[i] == cplx(0.0, 0.0)) continue;
            std::cout << bitstring_of(i, state.n_qubits()) << ' ' << fmt(state[i].real()) << ' '
                      << fmt(state[i].imag()) << ' ' << fmt(std::norm(state[i])) << '\n';
        }
        std::cout << "# probabilities over measured qubits\n";
        for (const auto& [key, p] : exact_probabilities(state, measured)) {
            std::cout << key << ' ' << fmt(p) << '\n';
        }
        return kExitOk;
    }
    const Counts counts =
        sample_circuit_counts(circuit, measured, args.shots, SeedSpec{args.seed, 0}, noise);
    std::cout << "# counts over " << counts.shots << " shots\n";
    for (const auto& [key, n] : counts.table) std::cout << key << ' ' << n << '\n';
    return kExitOk;
}

struct TranspileArgs {
    std::string circuit_path;
    std::string coupling_path;
    std::vector<int> layout;
    std::string out_path;
};

int cmd_transpile(const TranspileArgs& args) {
    const CircuitIR circuit = parse_circuit_text(read_file(args.circuit_path));
    const CouplingMap map = args.coupling_path.empty()
                                ? CouplingMap::ourense()
                                : coupling_map_from_json_file(args.coupling_path);
    LayoutMap layout;
    if (args.layout.empty()) {
        layout = LayoutMap::identity(circuit.n_qubits);
    } else {
        layout.physical = args.layout;
    }
    if (layout.size() != circuit.n_qubits) {
        throw config_error("layout must list one physical qubit per circuit qubit");
    }

    const RoutedCircuit routed = route(decompose_to_cx_basis(circuit), map, layout);
    std::string text = print_circuit_text(routed.circuit);
    text += "# cnot_count " + std::to_string(routed.report.cnot_count) + "\n";
    text += "# single_qubit_count " + std::to_string(routed.report.single_qubit_count) + "\n";
    text += "# swap_count " + std::to_string(routed.report.swap_count) + "\n";
    text += "# depth " + std::to_string(routed.report.depth) + "\n";
    text += "# final_layout";
    for (int p : routed.final_layout.physical) text += ' ' + std::to_string(p);
    text += '\n';

    if (args.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out) throw io_error("cannot open output file: " + args.out_path);
        out << text;
        if (!out) throw io_error("write failed: " + args.out_path);
    }
    return kExitOk;
}

int cmd_oracle(const std::string& circuit_path) {
    const CircuitIR circuit = parse_circuit_text(read_file(circuit_path));
    const StateVector state = run_circuit(circuit);
    for (int q = 0; q < circuit.n_qubits; ++q) {
        std::cout << "qubit " << q << " E " << fmt(oracle_entanglement_pure(state, q)) << '\n';
    }
    return kExitOk;
}

struct SweepArgs {
    std::string experiment;
    std::string config_path;
    std::optional<int> n_qubits;
    std::optional<double> grid_start, grid_stop, grid_step;
    std::optional<long long> shots;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::vector<int> targets;
    std::optional<std::string> out_path;
    bool noise = false;
    std::optional<std::string> circuit_path;
};

int cmd_sweep(const SweepArgs& args) {
    SweepConfig cfg;
    if (!args.config_path.empty()) {
        cfg = parse_config_file(args.config_path);
        if (cfg.experiment != experiment_from_name(args.experiment)) {
            throw config_error("config experiment does not match the sweep subcommand");
        }
    } else {
        cfg.experiment = experiment_from_name(args.experiment);
        cfg.shots = cfg.experiment == Experiment::mixed_bell ? 8192 : 1024;
    }
    if (args.n_qubits) {
        cfg.n_qubits = *args.n_qubits;
        check_register_size(cfg.experiment, cfg.n_qubits);
    }
    if (args.grid_start) cfg.grid.start = *args.grid_start;
    if (args.grid_stop) cfg.grid.stop = *args.grid_stop;
    if (args.grid_step) cfg.grid.step = *args.grid_step;
    if (args.grid_start || args.grid_stop || args.grid_step) {
        // a partially overridden grid keeps the experiment defaults for the rest
        if (!args.grid_step && cfg.grid.step == 1.0 && cfg.grid.stop == 0.0) {
            throw config_error("grid override needs --grid-step");
        }
    }
    if (args.shots) cfg.shots = *args.shots;
    if (args.seed) cfg.seed = *args.seed;
    if (args.mode) {
        if (*args.mode == "exact") {
            cfg.mode = Mode::exact;
        } else if (*args.mode == "sampled") {
            cfg.mode = Mode::sampled;
        } else {
            throw config_error("mode must be 'exact' or 'sampled'");
        }
    }
    if (!args.targets.empty()) cfg.target_qubits = args.targets;
    if (args.out_path) cfg.output_path = *args.out_path;
    if (args.noise) cfg.noise = NoiseModel::device_defaults();
    if (args.circuit_path) cfg.circuit_path = *args.circuit_path;
    cfg.apply_defaults();
    cfg.validate();

    const std::vector<ResultRow> rows = run_sweep(cfg);
    write_csv(rows, cfg.output_path);
    std::cout << "wrote " << rows.size() << " rows to " << cfg.output_path << '\n';
    if (any_flagged(rows)) {
        std::cerr << "some sweep points failed numerically; their rows carry nan\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"state-vector circuit simulator and entanglement measurement toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "run a circuit file");
    simulate->add_option("circuit", sim.circuit_path, "circuit text file")->required();
    simulate->add_option("--shots", sim.shots, "sample this many shots (0 = exact state)");
    simulate->add_option("--seed", sim.seed, "master seed");
    simulate->add_option("--measure", sim.measured, "qubits to measure (default: all)");
    simulate->add_flag("--noise", sim.noise, "enable the stock device noise model");

    SweepArgs sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep experiment");
    sweep_cmd->require_subcommand(1);
    for (const char* name : {"cat", "werner", "mixed-bell", "custom"}) {
        CLI::App* sub = sweep_cmd->add_subcommand(name);
        sub->add_option("--config", sweep.config_path, "JSON config file");
        sub->add_option("--n", sweep.n_qubits, "number of qubits");
        sub->add_option("--grid-start", sweep.grid_start);
        sub->add_option("--grid-stop", sweep.grid_stop);
        sub->add_option("--grid-step", sweep.grid_step);
        sub->add_option("--shots", sweep.shots, "shots per setting (mixed-bell: total)");
        sub->add_option("--seed", sweep.seed);
        sub->add_option("--mode", sweep.mode, "exact or sampled");
        sub->add_option("--targets", sweep.targets, "target qubits");
        sub->add_option("--out", sweep.out_path, "output CSV path");
        sub->add_flag("--noise", sweep.noise, "enable the stock device noise model");
        sub->add_option("--circuit", sweep.circuit_path, "circuit file (custom only)");
        sub->callback([&sweep, name]() { sweep.experiment = name; });
    }

    TranspileArgs trans;
    CLI::App* transpile = app.add_subcommand("transpile", "decompose and route a circuit");
    transpile->add_option("circuit", trans.circuit_path, "circuit text file")->required();
    transpile->add_option("--coupling", trans.coupling_path, "coupling map JSON (default: ourense)");
    transpile->add_option("--layout", trans.layout, "initial logical→physical layout");
    transpile->add_option("--out", trans.out_path, "write routed circuit here");

    std::string oracle_path;
    CLI::App* oracle = app.add_subcommand("oracle", "per-qubit entanglement from the reduced state");
    oracle->add_option("circuit", oracle_path, "circuit text file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (simulate->parsed()) return cmd_simulate(sim);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep);
    if (transpile->parsed()) return cmd_transpile(trans);
    if (oracle->parsed()) return cmd_oracle(oracle_path);
    return kExitConfig;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const numerical_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const structural_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace entsim::cli
