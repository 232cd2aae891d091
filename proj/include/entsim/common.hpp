#pragma once

#include <stdexcept>
#include <string>

namespace entsim {

// User-facing configuration problems: flags, config files, parameter
// ranges. CLI exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed in-memory structures: bad qubit indices, arity mismatches,
// inconsistent counts tables.
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated numeric contracts: norm drift, statistics outside slack.
// CLI exit code 3.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input state outside the domain a measurement protocol is defined on.
struct protocol_domain_error : numerical_error {
    using numerical_error::numerical_error;
};

// Filesystem failures. CLI exit code 4.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No usable connection between qubits that must interact.
struct routing_error : config_error {
    using config_error::config_error;
};

enum class parse_error_kind {
    bad_header,
    unknown_gate,
    bad_arity,
    bad_index,
    qubit_out_of_range,
    bad_angle,
};

// Circuit-text parse failure with 1-based line and column.
struct parse_error : config_error {
    parse_error(parse_error_kind k, int line_no, int col_no, const std::string& message)
        : config_error("parse error at line " + std::to_string(line_no) + ", column " +
                       std::to_string(col_no) + ": " + message),
          kind(k),
          line(line_no),
          column(col_no) {}

    parse_error_kind kind;
    int line;
    int column;
};

}  // namespace entsim
