#pragma once

// Test-only dense linear algebra: a brute-force route to circuit unitaries
// and state evolution that shares no index arithmetic with the production
// kernels. Only usable at small qubit counts.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "entsim/circuit.hpp"
#include "entsim/gates.hpp"
#include "entsim/state_vector.hpp"

namespace testref {

using cplx = std::complex<double>;

struct Matrix {
    std::size_t dim = 0;
    std::vector<cplx> a;  // row-major

    cplx& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Matrix identity(std::size_t dim) {
    Matrix m{dim, std::vector<cplx>(dim * dim, cplx(0, 0))};
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

inline Matrix multiply(const Matrix& lhs, const Matrix& rhs) {
    Matrix out{lhs.dim, std::vector<cplx>(lhs.dim * lhs.dim, cplx(0, 0))};
    for (std::size_t r = 0; r < lhs.dim; ++r) {
        for (std::size_t k = 0; k < lhs.dim; ++k) {
            const cplx v = lhs.at(r, k);
            if (v == cplx(0, 0)) continue;
            for (std::size_t c = 0; c < lhs.dim; ++c) out.at(r, c) += v * rhs.at(k, c);
        }
    }
    return out;
}

inline Matrix kron(const Matrix& lhs, const Matrix& rhs) {
    Matrix out{lhs.dim * rhs.dim, std::vector<cplx>(lhs.dim * rhs.dim * lhs.dim * rhs.dim)};
    for (std::size_t r1 = 0; r1 < lhs.dim; ++r1)
        for (std::size_t c1 = 0; c1 < lhs.dim; ++c1)
            for (std::size_t r2 = 0; r2 < rhs.dim; ++r2)
                for (std::size_t c2 = 0; c2 < rhs.dim; ++c2)
                    out.at(r1 * rhs.dim + r2, c1 * rhs.dim + c2) = lhs.at(r1, c1) * rhs.at(r2, c2);
    return out;
}

// Taylor series exp(M); fine for the small rotation generators used here.
inline Matrix matrix_exponential(const Matrix& m, int terms = 40) {
    Matrix sum = identity(m.dim);
    Matrix term = identity(m.dim);
    for (int k = 1; k <= terms; ++k) {
        term = multiply(term, m);
        for (cplx& v : term.a) v /= static_cast<double>(k);
        for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += term.a[i];
    }
    return sum;
}

// Full 2^n unitary of one gate placed on op.qubits (first operand = most
// significant gate-basis bit), built entry by entry.
inline Matrix embed_gate(const entsim::GateOp& op, int n_qubits) {
    const std::vector<cplx> g = entsim::gate_matrix(op);
    const int k = entsim::gate_arity(op.kind);
    const std::size_t gdim = std::size_t{1} << k;
    const std::size_t dim = std::size_t{1} << n_qubits;
    Matrix out{dim, std::vector<cplx>(dim * dim, cplx(0, 0))};
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t g_in = 0;
        for (int j = 0; j < k; ++j) {
            const std::size_t mask = std::size_t{1} << (n_qubits - 1 - op.qubits[j]);
            g_in = (g_in << 1) | ((col & mask) ? 1u : 0u);
        }
        for (std::size_t g_out = 0; g_out < gdim; ++g_out) {
            std::size_t row = col;
            for (int j = 0; j < k; ++j) {
                const std::size_t mask = std::size_t{1} << (n_qubits - 1 - op.qubits[j]);
                if ((g_out >> (k - 1 - j)) & 1u) {
                    row |= mask;
                } else {
                    row &= ~mask;
                }
            }
            out.at(row, col) += g[g_out * gdim + g_in];
        }
    }
    return out;
}

inline Matrix circuit_unitary(const entsim::CircuitIR& circuit) {
    Matrix u = identity(std::size_t{1} << circuit.n_qubits);
    for (const entsim::GateOp& op : circuit.ops) {
        u = multiply(embed_gate(op, circuit.n_qubits), u);
    }
    return u;
}

inline std::vector<cplx> apply(const Matrix& m, std::span<const cplx> v) {
    std::vector<cplx> out(m.dim, cplx(0, 0));
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t c = 0; c < m.dim; ++c) out[r] += m.at(r, c) * v[c];
    }
    return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.a.size(); ++i) {
        worst = std::max(worst, std::abs(a.a[i] - b.a[i]));
    }
    return worst;
}

// max |a - phase·b| after aligning b's global phase on the largest entry.
inline double max_abs_diff_up_to_phase(const Matrix& a, const Matrix& b) {
    std::size_t ref = 0;
    for (std::size_t i = 0; i < b.a.size(); ++i) {
        if (std::abs(b.a[i]) > std::abs(b.a[ref])) ref = i;
    }
    if (std::abs(b.a[ref]) < 1e-12) return max_abs_diff(a, b);
    const cplx phase = a.a[ref] / b.a[ref];
    double worst = 0.0;
    for (std::size_t i = 0; i < a.a.size(); ++i) {
        worst = std::max(worst, std::abs(a.a[i] - phase * b.a[i]));
    }
    return worst;
}

inline double max_abs_diff_up_to_phase(std::span<const cplx> a, std::span<const cplx> b) {
    std::size_t ref = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (std::abs(b[i]) > std::abs(b[ref])) ref = i;
    }
    cplx phase(1.0, 0.0);
    if (std::abs(b[ref]) >= 1e-12) phase = a[ref] / b[ref];
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - phase * b[i]));
    }
    return worst;
}

}  // namespace testref
