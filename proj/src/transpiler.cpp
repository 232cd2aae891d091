#include "entsim/transpiler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "entsim/common.hpp"

namespace entsim {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

}  // namespace

CouplingMap CouplingMap::ourense() {
    CouplingMap m;
    m.n_physical = 5;
    m.add_edge(0, 1);
    m.add_edge(1, 2);
    m.add_edge(1, 3);
    m.add_edge(3, 4);
    return m;
}

void CouplingMap::add_edge(int a, int b) {
    if (a == b) throw config_error("coupling edge endpoints must differ");
    edges.insert({std::min(a, b), std::max(a, b)});
}

bool CouplingMap::has_edge(int a, int b) const {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
}

void CouplingMap::validate() const {
    if (n_physical < 1) throw config_error("coupling map needs at least one qubit");
    for (const auto& [a, b] : edges) {
        if (a < 0 || b >= n_physical) {
            throw config_error("coupling edge endpoint out of range");
        }
    }
}

std::vector<int> CouplingMap::shortest_path(int from, int to) const {
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n_physical));
    for (const auto& [a, b] : edges) {
        adjacency[static_cast<std::size_t>(a)].push_back(b);
        adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& nbrs : adjacency) std::sort(nbrs.begin(), nbrs.end());

    std::vector<int> parent(static_cast<std::size_t>(n_physical), -1);
    std::deque<int> frontier{from};
    parent[static_cast<std::size_t>(from)] = from;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop_front();
        if (v == to) break;
        for (int w : adjacency[static_cast<std::size_t>(v)]) {
            if (parent[static_cast<std::size_t>(w)] == -1) {
                parent[static_cast<std::size_t>(w)] = v;
                frontier.push_back(w);
            }
        }
    }
    if (parent[static_cast<std::size_t>(to)] == -1) return {};
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(parent[static_cast<std::size_t>(path.back())]);
    std::reverse(path.begin(), path.end());
    return path;
}

CouplingMap coupling_map_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("coupling map JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n_physical") || !j.contains("edges")) {
        throw config_error("coupling map JSON needs n_physical and edges");
    }
    CouplingMap m;
    try {
        m.n_physical = j.at("n_physical").get<int>();
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw config_error("coupling edge must be a pair of qubit indices");
            }
            m.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("coupling map JSON: ") + e.what());
    }
    m.validate();
    return m;
}

CouplingMap coupling_map_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open coupling map file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return coupling_map_from_json_text(ss.str());
}

LayoutMap LayoutMap::identity(int n_logical) {
    LayoutMap l;
    l.physical.resize(static_cast<std::size_t>(n_logical));
    for (int i = 0; i < n_logical; ++i) l.physical[static_cast<std::size_t>(i)] = i;
    return l;
}

void LayoutMap::validate(int n_physical) const {
    for (std::size_t i = 0; i < physical.size(); ++i) {
        const int p = physical[i];
        if (p < 0 || p >= n_physical) throw config_error("layout target out of range");
        for (std::size_t j = i + 1; j < physical.size(); ++j) {
            if (physical[j] == p) throw config_error("layout must be injective");
        }
    }
}

// ---------------------------------------------------------------------------
// Text format

namespace {

const std::map<std::string, GateKind, std::less<>>& name_table() {
    static const std::map<std::string, GateKind, std::less<>> table = {
        {"u3", GateKind::U3},   {"h", GateKind::H},     {"x", GateKind::X},
        {"rx", GateKind::RX},   {"ry", GateKind::RY},   {"rz", GateKind::RZ},
        {"cx", GateKind::CNOT}, {"ch", GateKind::CH},   {"ccx", GateKind::CCX},
        {"swap", GateKind::SWAP},
    };
    return table;
}

struct Token {
    std::string_view text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

int parse_index(const Token& tok, int line_no, int n_qubits) {
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
        throw parse_error(parse_error_kind::bad_index, line_no, tok.column,
                          "expected a qubit index, got '" + std::string(tok.text) + "'");
    }
    if (value < 0 || value >= n_qubits) {
        throw parse_error(parse_error_kind::qubit_out_of_range, line_no, tok.column,
                          "qubit " + std::to_string(value) + " out of range for " +
                              std::to_string(n_qubits) + " qubits");
    }
    return value;
}

double parse_angle(const Token& tok, int line_no) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || !std::isfinite(value)) {
        throw parse_error(parse_error_kind::bad_angle, line_no, tok.column,
                          "expected an angle literal, got '" + std::string(tok.text) + "'");
    }
    return value;
}

}  // namespace

CircuitIR parse_circuit_text(std::string_view source) {
    CircuitIR circuit;
    bool saw_header = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        const std::size_t eol = source.find('\n', pos);
        const std::string_view line =
            source.substr(pos, eol == std::string_view::npos ? source.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? source.size() + 1 : eol + 1;
        ++line_no;

        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (!saw_header) {
            if (tokens[0].text != "qubits" || tokens.size() != 2) {
                throw parse_error(parse_error_kind::bad_header, line_no, tokens[0].column,
                                  "expected 'qubits <n>' header");
            }
            int n = 0;
            const auto& tok = tokens[1];
            const auto [ptr, ec] =
                std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), n);
            if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || n < 1) {
                throw parse_error(parse_error_kind::bad_header, line_no, tok.column,
                                  "qubit count must be a positive integer");
            }
            circuit.n_qubits = n;
            saw_header = true;
            continue;
        }

        const auto it = name_table().find(tokens[0].text);
        if (it == name_table().end()) {
            throw parse_error(parse_error_kind::unknown_gate, line_no, tokens[0].column,
                              "unknown gate '" + std::string(tokens[0].text) + "'");
        }
        const GateKind kind = it->second;
        const std::size_t arity = static_cast<std::size_t>(gate_arity(kind));
        const std::size_t n_params = static_cast<std::size_t>(gate_param_count(kind));
        if (tokens.size() != 1 + arity + n_params) {
            throw parse_error(parse_error_kind::bad_arity, line_no, tokens[0].column,
                              std::string(tokens[0].text) + " expects " + std::to_string(arity) +
                                  " qubit(s) and " + std::to_string(n_params) + " angle(s)");
        }
        GateOp op{kind, {}, {}};
        for (std::size_t i = 0; i < arity; ++i) {
            op.qubits.push_back(parse_index(tokens[1 + i], line_no, circuit.n_qubits));
        }
        for (std::size_t i = 0; i < n_params; ++i) {
            op.params.push_back(parse_angle(tokens[1 + arity + i], line_no));
        }
        try {
            circuit.append(std::move(op));
        } catch (const structural_error& e) {
            throw parse_error(parse_error_kind::qubit_out_of_range, line_no, tokens[0].column,
                              e.what());
        }
    }
    if (!saw_header) {
        throw parse_error(parse_error_kind::bad_header, 1, 1, "missing 'qubits <n>' header");
    }
    return circuit;
}

std::string print_circuit_text(const CircuitIR& circuit) {
    std::string out = "qubits " + std::to_string(circuit.n_qubits) + "\n";
    char buf[40];
    for (const GateOp& op : circuit.ops) {
        out += gate_name(op.kind);
        for (int q : op.qubits) {
            out += ' ';
            out += std::to_string(q);
        }
        for (double a : op.params) {
            // %.17g round-trips doubles exactly through the parser
            std::snprintf(buf, sizeof buf, "%.17g", a);
            out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Decomposition

std::vector<GateOp> decompose_ch(const GateOp& op) {
    if (op.kind != GateKind::CH) throw structural_error("decompose_ch expects a CH gate");
    const int c = op.qubits[0];
    const int t = op.qubits[1];
    return {
        GateOp::ry(t, kQuarterPi),
        GateOp::cnot(c, t),
        GateOp::ry(t, -kQuarterPi),
    };
}

std::vector<GateOp> decompose_toffoli(const GateOp& op) {
    if (op.kind != GateKind::CCX) throw structural_error("decompose_toffoli expects a CCX gate");
    const int a = op.qubits[0];
    const int b = op.qubits[1];
    const int t = op.qubits[2];
    // RZ(±π/4) stands in for T/T†; the product differs from CCX only by a
    // global phase.
    return {
        GateOp::h(t),
        GateOp::cnot(b, t),
        GateOp::rz(t, -kQuarterPi),
        GateOp::cnot(a, t),
        GateOp::rz(t, kQuarterPi),
        GateOp::cnot(b, t),
        GateOp::rz(t, -kQuarterPi),
        GateOp::cnot(a, t),
        GateOp::rz(b, kQuarterPi),
        GateOp::rz(t, kQuarterPi),
        GateOp::h(t),
        GateOp::cnot(a, b),
        GateOp::rz(a, kQuarterPi),
        GateOp::rz(b, -kQuarterPi),
        GateOp::cnot(a, b),
    };
}

CircuitIR decompose_to_cx_basis(const CircuitIR& circuit) {
    CircuitIR out{circuit.n_qubits, {}};
    for (const GateOp& op : circuit.ops) {
        switch (op.kind) {
            case GateKind::CH:
                for (GateOp& g : decompose_ch(op)) out.append(std::move(g));
                break;
            case GateKind::CCX:
                for (GateOp& g : decompose_toffoli(op)) out.append(std::move(g));
                break;
            case GateKind::SWAP:
                out.append(GateOp::cnot(op.qubits[0], op.qubits[1]));
                out.append(GateOp::cnot(op.qubits[1], op.qubits[0]));
                out.append(GateOp::cnot(op.qubits[0], op.qubits[1]));
                break;
            default:
                out.append(op);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Routing

RoutedCircuit route(const CircuitIR& circuit, const CouplingMap& map, const LayoutMap& layout) {
    map.validate();
    if (layout.size() != circuit.n_qubits) {
        throw config_error("layout size does not match circuit qubit count");
    }
    layout.validate(map.n_physical);

    // wire_of maps logical qubits to their current physical wire;
    // logical_on is its partial inverse (-1 = wire holds no logical qubit).
    std::vector<int> wire_of = layout.physical;
    std::vector<int> logical_on(static_cast<std::size_t>(map.n_physical), -1);
    for (int l = 0; l < circuit.n_qubits; ++l) {
        logical_on[static_cast<std::size_t>(wire_of[static_cast<std::size_t>(l)])] = l;
    }
    auto swap_wires = [&](int u, int v) {
        const int lu = logical_on[static_cast<std::size_t>(u)];
        const int lv = logical_on[static_cast<std::size_t>(v)];
        std::swap(logical_on[static_cast<std::size_t>(u)], logical_on[static_cast<std::size_t>(v)]);
        if (lu != -1) wire_of[static_cast<std::size_t>(lu)] = v;
        if (lv != -1) wire_of[static_cast<std::size_t>(lv)] = u;
    };

    RoutedCircuit out;
    out.circuit.n_qubits = map.n_physical;
    auto emit_cx = [&](int c, int t) {
        out.circuit.append(GateOp::cnot(c, t));
        ++out.report.cnot_count;
    };

    for (const GateOp& op : circuit.ops) {
        const int arity = gate_arity(op.kind);
        if (arity == 1) {
            GateOp mapped = op;
            mapped.qubits[0] = wire_of[static_cast<std::size_t>(op.qubits[0])];
            out.circuit.append(std::move(mapped));
            ++out.report.single_qubit_count;
            continue;
        }
        if (op.kind != GateKind::CNOT) {
            throw structural_error("route requires the {CNOT + single-qubit} basis; found '" +
                                   std::string(gate_name(op.kind)) + "'");
        }
        const int pc = wire_of[static_cast<std::size_t>(op.qubits[0])];
        const int pt = wire_of[static_cast<std::size_t>(op.qubits[1])];
        std::vector<int> path = map.shortest_path(pc, pt);
        if (path.empty()) {
            throw routing_error("no coupling path between physical qubits " + std::to_string(pc) +
                                " and " + std::to_string(pt));
        }
        // Walk the control toward the target until the pair sits on an edge.
        for (std::size_t step = 0; step + 2 < path.size(); ++step) {
            const int u = path[step];
            const int v = path[step + 1];
            emit_cx(u, v);
            emit_cx(v, u);
            emit_cx(u, v);
            ++out.report.swap_count;
            swap_wires(u, v);
        }
        emit_cx(path[path.size() - 2], path.back());
    }

    // hard invariant of the routed output
    for (const GateOp& op : out.circuit.ops) {
        if (gate_arity(op.kind) == 2 && !map.has_edge(op.qubits[0], op.qubits[1])) {
            throw structural_error("routed circuit contains an off-edge two-qubit gate");
        }
    }

    out.report.depth = circuit_depth(out.circuit);
    out.final_layout.physical = wire_of;
    return out;
}

}  // namespace entsim
