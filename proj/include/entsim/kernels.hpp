#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace entsim::kernels {

using cplx = std::complex<double>;

// Every kernel runs either as a plain serial loop or as the same loop
// under `omp parallel for`. The serial path is the reference the parallel
// path is tested against; both write disjoint index blocks, so results are
// bit-identical regardless of thread count.
enum class Exec { serial, parallel, auto_pick };

// auto_pick goes parallel at or above this amplitude count.
inline constexpr std::size_t kParallelCutoverDim = std::size_t{1} << 15;

bool run_parallel(Exec exec, std::size_t dim);

// Gate application. `bits` are bit positions inside the amplitude index
// (position 0 = least significant); callers translate qubit numbers.
// The matrix basis follows the order of `bits`: bits[0] is the most
// significant bit of the matrix row index.
void apply_1q(std::span<cplx> amps, int bit, std::span<const cplx> u, Exec exec);
void apply_2q(std::span<cplx> amps, std::array<int, 2> bits, std::span<const cplx> u,
              Exec exec);
void apply_3q(std::span<cplx> amps, std::array<int, 3> bits, std::span<const cplx> u,
              Exec exec);

// Reductions accumulate over a fixed number of index chunks and combine
// the partials in chunk order, so the result does not depend on thread
// count or schedule.
double sum_abs2(std::span<const cplx> amps, Exec exec);

// ⟨σᶻ⟩ of the qubit selected by `qubit_mask`: P(bit=0) − P(bit=1).
double z_expectation(std::span<const cplx> amps, std::size_t qubit_mask, Exec exec);

// Expectation of (−1)^{popcount(index)}: the all-qubits σᶻ string.
double parity_z_expectation(std::span<const cplx> amps, Exec exec);

// Adds |amp|² into bins indexed by the bits selected by `bit_masks`
// (masks[0] = most significant bin bit). `bins` must hold 2^masks.size()
// zero-initialised entries.
void accumulate_marginal(std::span<const cplx> amps, std::span<const std::size_t> bit_masks,
                         std::span<double> bins, Exec exec);

// Single-qubit reduced density matrix, row-major [ρ00, ρ01, ρ10, ρ11].
std::array<cplx, 4> reduced_density_1q(std::span<const cplx> amps, std::size_t qubit_mask,
                                       Exec exec);

}  // namespace entsim::kernels
