#include "entsim/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "entsim/common.hpp"

namespace entsim::kernels {

namespace {

constexpr std::int64_t kReduceChunks = 256;

// Spreads a compact counter over the index space, leaving a 0 bit at `pos`.
inline std::size_t insert_zero(std::size_t v, int pos) {
    const std::size_t low = v & ((std::size_t{1} << pos) - 1);
    return ((v >> pos) << (pos + 1)) | low;
}

// Ordered-chunk reduction: partials are computed per chunk (possibly in
// parallel) and summed serially in chunk order.
template <typename T, typename PartialFn>
T chunked_reduce(std::size_t dim, bool parallel, PartialFn&& partial) {
    const std::int64_t n = static_cast<std::int64_t>(dim);
    const std::int64_t chunks = std::min<std::int64_t>(kReduceChunks, std::max<std::int64_t>(n, 1));
    std::vector<T> part(static_cast<std::size_t>(chunks), T{});
#pragma omp parallel for if (parallel) schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::size_t begin = static_cast<std::size_t>(n * c / chunks);
        const std::size_t end = static_cast<std::size_t>(n * (c + 1) / chunks);
        part[static_cast<std::size_t>(c)] = partial(begin, end);
    }
    T total{};
    for (const T& p : part) total += p;
    return total;
}

}  // namespace

bool run_parallel(Exec exec, std::size_t dim) {
    switch (exec) {
        case Exec::serial: return false;
        case Exec::parallel: return true;
        case Exec::auto_pick: return dim >= kParallelCutoverDim;
    }
    return false;
}

void apply_1q(std::span<cplx> amps, int bit, std::span<const cplx> u, Exec exec) {
    if (u.size() != 4) throw structural_error("apply_1q expects a 2x2 matrix");
    const std::int64_t half = static_cast<std::int64_t>(amps.size() >> 1);
    const std::size_t m = std::size_t{1} << bit;
    const bool par = run_parallel(exec, amps.size());
    cplx* a = amps.data();
    const cplx u00 = u[0], u01 = u[1], u10 = u[2], u11 = u[3];
#pragma omp parallel for if (par) schedule(static)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), bit);
        const std::size_t i1 = i0 | m;
        const cplx a0 = a[i0];
        const cplx a1 = a[i1];
        a[i0] = u00 * a0 + u01 * a1;
        a[i1] = u10 * a0 + u11 * a1;
    }
}

void apply_2q(std::span<cplx> amps, std::array<int, 2> bits, std::span<const cplx> u,
              Exec exec) {
    if (u.size() != 16) throw structural_error("apply_2q expects a 4x4 matrix");
    const std::int64_t quarter = static_cast<std::int64_t>(amps.size() >> 2);
    const int lo = std::min(bits[0], bits[1]);
    const int hi = std::max(bits[0], bits[1]);
    // bits[0] indexes the most significant matrix-basis bit.
    const std::size_t m_first = std::size_t{1} << bits[0];
    const std::size_t m_second = std::size_t{1} << bits[1];
    const bool par = run_parallel(exec, amps.size());
    cplx* a = amps.data();
    const cplx* mu = u.data();
#pragma omp parallel for if (par) schedule(static)
    for (std::int64_t k = 0; k < quarter; ++k) {
        const std::size_t base = insert_zero(insert_zero(static_cast<std::size_t>(k), lo), hi);
        std::size_t idx[4];
        cplx in[4];
        for (int j = 0; j < 4; ++j) {
            idx[j] = base | ((j & 2) ? m_first : 0) | ((j & 1) ? m_second : 0);
            in[j] = a[idx[j]];
        }
        for (int r = 0; r < 4; ++r) {
            cplx acc(0.0, 0.0);
            for (int c = 0; c < 4; ++c) acc += mu[r * 4 + c] * in[c];
            a[idx[r]] = acc;
        }
    }
}

void apply_3q(std::span<cplx> amps, std::array<int, 3> bits, std::span<const cplx> u,
              Exec exec) {
    if (u.size() != 64) throw structural_error("apply_3q expects an 8x8 matrix");
    const std::int64_t eighth = static_cast<std::int64_t>(amps.size() >> 3);
    std::array<int, 3> sorted = bits;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m0 = std::size_t{1} << bits[0];
    const std::size_t m1 = std::size_t{1} << bits[1];
    const std::size_t m2 = std::size_t{1} << bits[2];
    const bool par = run_parallel(exec, amps.size());
    cplx* a = amps.data();
    const cplx* mu = u.data();
#pragma omp parallel for if (par) schedule(static)
    for (std::int64_t k = 0; k < eighth; ++k) {
        std::size_t base = static_cast<std::size_t>(k);
        base = insert_zero(base, sorted[0]);
        base = insert_zero(base, sorted[1]);
        base = insert_zero(base, sorted[2]);
        std::size_t idx[8];
        cplx in[8];
        for (int j = 0; j < 8; ++j) {
            idx[j] = base | ((j & 4) ? m0 : 0) | ((j & 2) ? m1 : 0) | ((j & 1) ? m2 : 0);
            in[j] = a[idx[j]];
        }
        for (int r = 0; r < 8; ++r) {
            cplx acc(0.0, 0.0);
            for (int c = 0; c < 8; ++c) acc += mu[r * 8 + c] * in[c];
            a[idx[r]] = acc;
        }
    }
}

double sum_abs2(std::span<const cplx> amps, Exec exec) {
    const cplx* a = amps.data();
    const bool par = run_parallel(exec, amps.size());
    return chunked_reduce<double>(amps.size(), par, [a](std::size_t b, std::size_t e) {
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += std::norm(a[i]);
        return s;
    });
}

double z_expectation(std::span<const cplx> amps, std::size_t qubit_mask, Exec exec) {
    const cplx* a = amps.data();
    const bool par = run_parallel(exec, amps.size());
    return chunked_reduce<double>(amps.size(), par, [a, qubit_mask](std::size_t b, std::size_t e) {
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) {
            const double p = std::norm(a[i]);
            s += (i & qubit_mask) ? -p : p;
        }
        return s;
    });
}

double parity_z_expectation(std::span<const cplx> amps, Exec exec) {
    const cplx* a = amps.data();
    const bool par = run_parallel(exec, amps.size());
    return chunked_reduce<double>(amps.size(), par, [a](std::size_t b, std::size_t e) {
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) {
            const double p = std::norm(a[i]);
            s += (std::popcount(i) & 1) ? -p : p;
        }
        return s;
    });
}

void accumulate_marginal(std::span<const cplx> amps, std::span<const std::size_t> bit_masks,
                         std::span<double> bins, Exec exec) {
    const std::size_t m = bit_masks.size();
    if (bins.size() != (std::size_t{1} << m)) {
        throw structural_error("marginal bin count does not match mask count");
    }
    const cplx* a = amps.data();
    const std::size_t dim = amps.size();
    auto bin_of = [&](std::size_t i) {
        std::size_t b = 0;
        for (std::size_t j = 0; j < m; ++j) {
            b = (b << 1) | ((i & bit_masks[j]) ? 1u : 0u);
        }
        return b;
    };
    const bool par = run_parallel(exec, dim) && bins.size() <= 1024;
    if (!par) {
        for (std::size_t i = 0; i < dim; ++i) bins[bin_of(i)] += std::norm(a[i]);
        return;
    }
    // Chunk-local bins merged in chunk order keep the accumulation
    // deterministic under any thread count.
    const std::int64_t chunks = kReduceChunks;
    std::vector<double> local(static_cast<std::size_t>(chunks) * bins.size(), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::size_t begin = dim * static_cast<std::size_t>(c) / chunks;
        const std::size_t end = dim * static_cast<std::size_t>(c + 1) / chunks;
        double* mine = local.data() + static_cast<std::size_t>(c) * bins.size();
        for (std::size_t i = begin; i < end; ++i) mine[bin_of(i)] += std::norm(a[i]);
    }
    for (std::int64_t c = 0; c < chunks; ++c) {
        const double* mine = local.data() + static_cast<std::size_t>(c) * bins.size();
        for (std::size_t b = 0; b < bins.size(); ++b) bins[b] += mine[b];
    }
}

std::array<cplx, 4> reduced_density_1q(std::span<const cplx> amps, std::size_t qubit_mask,
                                       Exec exec) {
    const cplx* a = amps.data();
    const std::size_t dim = amps.size();
    const bool par = run_parallel(exec, dim);
    const std::size_t half = dim >> 1;
    const int pos = std::countr_zero(qubit_mask);

    struct Accum {
        double p0 = 0.0, p1 = 0.0;
        cplx coh{0.0, 0.0};
        Accum& operator+=(const Accum& o) {
            p0 += o.p0;
            p1 += o.p1;
            coh += o.coh;
            return *this;
        }
    };
    const Accum acc =
        chunked_reduce<Accum>(half, par, [a, qubit_mask, pos](std::size_t b, std::size_t e) {
            Accum s;
            for (std::size_t k = b; k < e; ++k) {
                const std::size_t i0 = insert_zero(k, pos);
                const std::size_t i1 = i0 | qubit_mask;
                s.p0 += std::norm(a[i0]);
                s.p1 += std::norm(a[i1]);
                s.coh += a[i0] * std::conj(a[i1]);
            }
            return s;
        });
    return {cplx(acc.p0, 0.0), acc.coh, std::conj(acc.coh), cplx(acc.p1, 0.0)};
}

}  // namespace entsim::kernels
