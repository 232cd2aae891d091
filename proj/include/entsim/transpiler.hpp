#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entsim/circuit.hpp"

namespace entsim {

// Undirected connectivity constraint for two-qubit gates. Both directions
// of an edge are usable.
struct CouplingMap {
    int n_physical = 0;
    std::set<std::pair<int, int>> edges;  // stored with first < second

    static CouplingMap ourense();  // 5 qubits, edges 0-1, 1-2, 1-3, 3-4

    void add_edge(int a, int b);
    bool has_edge(int a, int b) const;
    // BFS shortest path, neighbor ties resolved by lowest index; empty if
    // unreachable.
    std::vector<int> shortest_path(int from, int to) const;
    void validate() const;
};

CouplingMap coupling_map_from_json_file(const std::string& path);
CouplingMap coupling_map_from_json_text(const std::string& text);

// Injective logical→physical qubit assignment.
struct LayoutMap {
    std::vector<int> physical;  // physical[logical]

    static LayoutMap identity(int n_logical);
    int at(int logical) const { return physical[static_cast<std::size_t>(logical)]; }
    int size() const { return static_cast<int>(physical.size()); }
    void validate(int n_physical) const;
};

struct GateCountReport {
    long long cnot_count = 0;
    long long single_qubit_count = 0;
    long long swap_count = 0;
    long long depth = 0;
};

struct RoutedCircuit {
    CircuitIR circuit;       // on physical qubits, two-qubit gates on edges only
    GateCountReport report;
    LayoutMap final_layout;  // where each logical qubit ended up
};

// Line-oriented circuit text:
//   qubits <n>
//   u3 q θ φ λ | h q | x q | rx q α | ry q α | rz q α
//   cx c t | ch c t | ccx c1 c2 t | swap a b
// '#' starts a comment, blank lines are ignored, angles are decimal
// literals in radians.
CircuitIR parse_circuit_text(std::string_view source);
std::string print_circuit_text(const CircuitIR& circuit);

// CH as {RY, CNOT, RY}: exact, no phase deviation.
std::vector<GateOp> decompose_ch(const GateOp& op);

// Standard 6-CNOT Toffoli network over {H, RZ(±π/4), CNOT}; equals CCX up
// to a global phase.
std::vector<GateOp> decompose_toffoli(const GateOp& op);

// Rewrites CH, CCX and SWAP into the {CNOT + single-qubit} basis.
CircuitIR decompose_to_cx_basis(const CircuitIR& circuit);

// Greedy shortest-path SWAP insertion (each SWAP emitted as 3 CNOTs).
// Requires the input to be in the {CNOT + single-qubit} basis already.
// The output acts on map.n_physical qubits and equals the input under the
// final layout permutation, up to global phase.
RoutedCircuit route(const CircuitIR& circuit, const CouplingMap& map, const LayoutMap& layout);

}  // namespace entsim
