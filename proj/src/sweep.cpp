#include "entsim/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "entsim/circuits.hpp"
#include "entsim/common.hpp"
#include "entsim/simulator.hpp"
#include "entsim/transpiler.hpp"

namespace entsim {

std::string_view experiment_name(Experiment e) {
    switch (e) {
        case Experiment::cat: return "cat";
        case Experiment::werner: return "werner";
        case Experiment::mixed_bell: return "mixed_bell";
        case Experiment::custom: return "custom";
    }
    throw structural_error("unknown experiment");
}

Experiment experiment_from_name(std::string_view name) {
    if (name == "cat") return Experiment::cat;
    if (name == "werner") return Experiment::werner;
    if (name == "mixed_bell" || name == "mixed-bell") return Experiment::mixed_bell;
    if (name == "custom") return Experiment::custom;
    throw config_error("unknown experiment '" + std::string(name) + "'");
}

void check_register_size(Experiment experiment, int n_qubits) {
    if (experiment == Experiment::werner && n_qubits != 3) {
        throw config_error("werner sweeps are defined on 3 qubits");
    }
    if (experiment == Experiment::mixed_bell && n_qubits != 2) {
        throw config_error("mixed_bell sweeps are defined on 2 qubits");
    }
}

std::vector<double> GridSpec::points() const {
    if (!(step > 0.0)) throw config_error("grid step must be > 0");
    if (stop < start) throw config_error("grid stop must be >= start");
    const double span = (stop - start) / step;
    if (!(span < 1e7)) throw config_error("grid has too many points");
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> pts(count);
    for (std::size_t k = 0; k < count; ++k) pts[k] = start + static_cast<double>(k) * step;
    return pts;
}

void SweepConfig::apply_defaults() {
    const double pi = std::numbers::pi;
    if (grid.start == 0.0 && grid.stop == 0.0 && grid.step == 1.0) {
        if (experiment == Experiment::mixed_bell) {
            grid = {0.0, 1.0, 0.125};
        } else if (experiment == Experiment::custom) {
            grid = {0.0, 0.0, 1.0};  // single point
        } else {
            grid = {0.0, pi, pi / 16.0};
        }
    }
    if (experiment == Experiment::werner) n_qubits = 3;
    if (experiment == Experiment::mixed_bell) n_qubits = 2;
    if (target_qubits.empty() && experiment != Experiment::custom) {
        // custom targets resolve against the loaded circuit in run_sweep
        if (experiment == Experiment::mixed_bell) {
            target_qubits = {0};
        } else {
            for (int q = 0; q < n_qubits; ++q) target_qubits.push_back(q);
        }
    }
}

void SweepConfig::validate() const {
    grid.points();  // validates the grid shape
    if (shots < 1) throw config_error("shots must be >= 1");
    noise.validate();
    if (target_qubits.empty() && experiment != Experiment::custom) {
        throw config_error("no target qubits");
    }
    switch (experiment) {
        case Experiment::cat:
            if (n_qubits < 2 || n_qubits > StateVector::kMaxQubits) {
                throw config_error("cat sweep needs 2..24 qubits");
            }
            if (grid.start < 0.0 || grid.stop > std::numbers::pi + 1e-9) {
                throw config_error("cat theta grid must lie in [0, pi]");
            }
            break;
        case Experiment::werner:
            if (n_qubits != 3) throw config_error("werner sweep is defined on 3 qubits");
            if (grid.start < 0.0 || grid.stop > std::numbers::pi + 1e-9) {
                throw config_error("werner theta grid must lie in [0, pi]");
            }
            break;
        case Experiment::mixed_bell:
            if (grid.start < 0.0 || grid.stop > 1.0 + 1e-12) {
                throw config_error("mixed_bell omega grid must lie in [0, 1]");
            }
            break;
        case Experiment::custom:
            if (circuit_path.empty()) {
                throw config_error("custom sweep needs circuit_path");
            }
            return;  // targets checked against the loaded circuit
    }
    for (int q : target_qubits) {
        if (q < 0 || q >= n_qubits) {
            throw config_error("target qubit " + std::to_string(q) + " out of range");
        }
    }
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct PointTask {
    const SweepConfig* config;
    const CircuitIR* custom_circuit;  // null unless experiment == custom
    double param;
    std::size_t point_index;
    int target;
};

ResultRow evaluate_point(const PointTask& task) {
    const SweepConfig& cfg = *task.config;
    MeasureOptions options;
    options.mode = cfg.mode;
    options.shots_per_axis = cfg.shots;
    options.noise = cfg.noise;
    options.seed = SeedSpec{cfg.seed,
                            task.point_index * 64 + static_cast<std::uint64_t>(task.target)};

    ResultRow row;
    row.param = task.param;
    row.target_qubit = task.target;

    EntanglementEstimate est;
    switch (cfg.experiment) {
        case Experiment::cat: {
            const CircuitIR circuit = build_cat_circuit(cfg.n_qubits, task.param, 0.0);
            est = to_entanglement_estimate(estimate_mean_spin(circuit, task.target, options),
                                           analytic_cat(task.param));
            break;
        }
        case Experiment::werner: {
            const CircuitIR circuit = build_werner_circuit(task.param);
            const WernerRole role =
                task.target == 2 ? WernerRole::third : WernerRole::first_or_second;
            est = to_entanglement_estimate(estimate_mean_spin(circuit, task.target, options),
                                           analytic_werner(task.param, role));
            break;
        }
        case Experiment::mixed_bell: {
            MixedEnsemble ensemble;
            ensemble.members.push_back({build_bell_circuit(BellSign::plus), task.param});
            ensemble.members.push_back({build_bell_circuit(BellSign::minus), 1.0 - task.param});
            ensemble.total_shots = cfg.shots;
            est = estimate_rank2_entanglement(ensemble, task.target, options);
            est.e_theory = analytic_mixed_bell(task.param);
            est.delta = std::abs(est.e_measured - *est.e_theory);
            break;
        }
        case Experiment::custom: {
            // Reference value comes from the reduced-density-matrix oracle
            // on the noiseless state, so delta isolates sampling and noise.
            const double oracle =
                oracle_entanglement_pure(run_circuit(*task.custom_circuit), task.target);
            est = to_entanglement_estimate(
                estimate_mean_spin(*task.custom_circuit, task.target, options), oracle);
            break;
        }
    }

    row.e_theory = est.e_theory;
    row.e_measured = est.e_measured;
    row.abs_delta = est.delta;
    row.components = est.components;
    row.std_err = est.std_err;
    row.shots = est.shots_used;
    return row;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepConfig& config) {
    config.validate();

    CircuitIR custom_circuit;
    std::vector<int> targets = config.target_qubits;
    if (config.experiment == Experiment::custom) {
        custom_circuit = parse_circuit_text(read_file(config.circuit_path));
        if (targets.empty()) {
            for (int q = 0; q < custom_circuit.n_qubits; ++q) targets.push_back(q);
        }
        for (int q : targets) {
            if (q < 0 || q >= custom_circuit.n_qubits) {
                throw config_error("target qubit out of range for custom circuit");
            }
        }
    }

    const std::vector<double> points = config.grid.points();
    const std::size_t n_targets = targets.size();
    const std::size_t total = points.size() * n_targets;

    std::vector<PointTask> tasks(total);
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t t = 0; t < n_targets; ++t) {
            tasks[p * n_targets + t] = {&config,
                                        config.experiment == Experiment::custom ? &custom_circuit
                                                                                : nullptr,
                                        points[p], p, targets[t]};
        }
    }

    std::vector<ResultRow> rows(total);
    const std::int64_t n_tasks = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n_tasks; ++i) {
        const auto& task = tasks[static_cast<std::size_t>(i)];
        try {
            rows[static_cast<std::size_t>(i)] = evaluate_point(task);
        } catch (const numerical_error&) {
            ResultRow row;
            row.param = task.param;
            row.target_qubit = task.target;
            row.e_measured = std::numeric_limits<double>::quiet_NaN();
            row.flagged = true;
            rows[static_cast<std::size_t>(i)] = row;
        }
    }
    return rows;
}

bool any_flagged(std::span<const ResultRow> rows) {
    for (const ResultRow& r : rows) {
        if (r.flagged) return true;
    }
    return false;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    out += buf;
}

}  // namespace

std::string csv_to_string(std::span<const ResultRow> rows) {
    std::string out =
        "param,target_qubit,E_theory,E_measured,abs_delta,comp_1,comp_2,comp_3,std_err,shots\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const ResultRow& r : rows) {
        append_double(out, r.param);
        out += ',';
        out += std::to_string(r.target_qubit);
        out += ',';
        append_double(out, r.e_theory.value_or(nan));
        out += ',';
        append_double(out, r.e_measured);
        out += ',';
        append_double(out, r.abs_delta.value_or(nan));
        for (double c : r.components) {
            out += ',';
            append_double(out, c);
        }
        out += ',';
        append_double(out, r.std_err);
        out += ',';
        out += std::to_string(r.shots);
        out += '\n';
    }
    return out;
}

void write_csv(std::span<const ResultRow> rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);
    const std::string text = csv_to_string(rows);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw io_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Config file

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (std::string_view a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) throw config_error("unknown key '" + key + "' in " + where);
    }
}

GridSpec grid_from_json(const json& j) {
    if (!j.is_object()) throw config_error("grid must be an object with start/stop/step");
    reject_unknown_keys(j, {"start", "stop", "step"}, "grid");
    GridSpec g;
    if (j.contains("start")) g.start = j.at("start").get<double>();
    if (j.contains("stop")) g.stop = j.at("stop").get<double>();
    if (!j.contains("step")) throw config_error("missing required key: grid step");
    g.step = j.at("step").get<double>();
    return g;
}

std::map<int, double> qubit_rates_from_json(const json& j, const std::string& where) {
    std::map<int, double> rates;
    if (!j.is_object()) throw config_error(where + " must map qubit index to probability");
    for (const auto& [key, value] : j.items()) {
        int qubit = 0;
        const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), qubit);
        if (ec != std::errc{} || ptr != key.data() + key.size() || qubit < 0) {
            throw config_error(where + " key '" + key + "' is not a qubit index");
        }
        rates[qubit] = value.get<double>();
    }
    return rates;
}

NoiseModel noise_from_json(const json& j) {
    reject_unknown_keys(
        j, {"enabled", "readout_flip", "gate_depolarizing_1q", "gate_depolarizing_2q"}, "noise");
    const bool enabled = j.value("enabled", false);
    if (!enabled) return NoiseModel::none();
    const bool has_rates = j.contains("readout_flip") || j.contains("gate_depolarizing_1q") ||
                           j.contains("gate_depolarizing_2q");
    // enabled with no explicit rates means the stock device numbers
    NoiseModel m = has_rates ? NoiseModel{} : NoiseModel::device_defaults();
    m.enabled = true;
    if (j.contains("readout_flip")) {
        m.readout_flip = qubit_rates_from_json(j.at("readout_flip"), "readout_flip");
    }
    if (j.contains("gate_depolarizing_1q")) {
        m.gate_depolarizing_1q =
            qubit_rates_from_json(j.at("gate_depolarizing_1q"), "gate_depolarizing_1q");
    }
    if (j.contains("gate_depolarizing_2q")) {
        m.gate_depolarizing_2q = j.at("gate_depolarizing_2q").get<double>();
    }
    m.validate();
    return m;
}

SweepConfig config_from_validated_json(const json& j) {
    SweepConfig cfg;
    cfg.experiment = experiment_from_name(j.at("experiment").get<std::string>());
    if (j.contains("n_qubits")) {
        cfg.n_qubits = j.at("n_qubits").get<int>();
        check_register_size(cfg.experiment, cfg.n_qubits);
    }
    const bool is_mixed = cfg.experiment == Experiment::mixed_bell;
    if (j.contains("theta_grid")) {
        if (is_mixed) throw config_error("mixed_bell sweeps take omega_grid, not theta_grid");
        cfg.grid = grid_from_json(j.at("theta_grid"));
    }
    if (j.contains("omega_grid")) {
        if (!is_mixed) throw config_error("omega_grid applies only to mixed_bell sweeps");
        cfg.grid = grid_from_json(j.at("omega_grid"));
    }
    cfg.shots = is_mixed ? 8192 : 1024;
    if (j.contains("shots")) cfg.shots = j.at("shots").get<long long>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mode")) {
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "exact") {
            cfg.mode = Mode::exact;
        } else if (mode == "sampled") {
            cfg.mode = Mode::sampled;
        } else {
            throw config_error("mode must be 'exact' or 'sampled'");
        }
    }
    if (j.contains("noise")) cfg.noise = noise_from_json(j.at("noise"));
    if (j.contains("target_qubits")) {
        cfg.target_qubits = j.at("target_qubits").get<std::vector<int>>();
    }
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("circuit_path")) cfg.circuit_path = j.at("circuit_path").get<std::string>();

    cfg.apply_defaults();
    cfg.validate();
    return cfg;
}

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config must be a JSON object");
    reject_unknown_keys(j,
                        {"experiment", "n_qubits", "theta_grid", "omega_grid", "shots", "seed",
                         "mode", "noise", "target_qubits", "output_path", "circuit_path"},
                        "config");
    if (!j.contains("experiment")) throw config_error("missing required key: experiment");

    try {
        return config_from_validated_json(j);
    } catch (const json::exception& e) {
        // mistyped values surface from the .get<T>() accessors
        throw config_error(std::string("config JSON: ") + e.what());
    }
}

SweepConfig parse_config_file(const std::string& path) {
    return parse_config_text(read_file(path));
}

}  // namespace entsim
