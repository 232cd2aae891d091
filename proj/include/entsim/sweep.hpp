#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entsim/protocols.hpp"

namespace entsim {

enum class Experiment { cat, werner, mixed_bell, custom };

std::string_view experiment_name(Experiment e);
Experiment experiment_from_name(std::string_view name);  // config_error on unknown

// werner and mixed_bell run on fixed register sizes; an explicit
// conflicting n_qubits is a config error rather than silently overridden.
void check_register_size(Experiment experiment, int n_qubits);

// Inclusive arithmetic grid; stop is matched with a small tolerance so
// that e.g. 0..1 step 0.125 yields 9 points.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> points() const;  // config_error on step <= 0 / empty grid
};

// One sweep request. `shots` means shots per measurement setting for the
// mean-spin experiments and the total shot budget for mixed_bell.
struct SweepConfig {
    Experiment experiment = Experiment::cat;
    int n_qubits = 2;
    GridSpec grid;
    long long shots = 1024;
    std::uint64_t seed = 0;
    Mode mode = Mode::sampled;
    NoiseModel noise;
    std::vector<int> target_qubits;
    std::string output_path = "sweep.csv";
    std::string circuit_path;  // custom experiment only

    void validate() const;
    void apply_defaults();  // fills grid/targets/shots not set explicitly
};

struct ResultRow {
    double param = 0.0;
    int target_qubit = 0;
    std::optional<double> e_theory;
    double e_measured = 0.0;
    std::optional<double> abs_delta;
    std::array<double, 3> components{};
    double std_err = 0.0;
    long long shots = 0;
    bool flagged = false;  // numerical failure at this point
};

// One row per grid point per target qubit, in grid order. Points evaluate
// in parallel; per-point seeds derive from (seed, point index, target), so
// the rows do not depend on the schedule. A numerical failure flags its
// row and the sweep continues.
std::vector<ResultRow> run_sweep(const SweepConfig& config);

bool any_flagged(std::span<const ResultRow> rows);

// Header: param,target_qubit,E_theory,E_measured,abs_delta,comp_1,comp_2,
// comp_3,std_err,shots. Ten significant digits, UNIX newlines; absent
// theory values print as nan.
std::string csv_to_string(std::span<const ResultRow> rows);
void write_csv(std::span<const ResultRow> rows, const std::string& path);

// JSON config file with keys mirroring SweepConfig; unknown keys are
// rejected, missing required keys are named.
SweepConfig parse_config_file(const std::string& path);
SweepConfig parse_config_text(const std::string& text);

}  // namespace entsim
