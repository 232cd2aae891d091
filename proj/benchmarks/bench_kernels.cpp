// Times the gate kernels under the serial reference path and the OpenMP
// path on the same inputs, and checks they agree bit for bit.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "entsim/kernels.hpp"
#include "entsim/simulator.hpp"

using namespace entsim;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<cplx> amps(std::size_t{1} << n);
    double norm = 0.0;
    for (cplx& a : amps) {
        a = cplx(static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                 static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (cplx& a : amps) a /= norm;
    return StateVector(n, std::move(amps));
}

struct BenchCase {
    const char* label;
    GateOp op;
};

double time_gates(StateVector& state, const GateOp& op, Exec exec, int reps) {
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) apply_gate_inplace(state, op, exec);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
               .count() /
           reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("%-22s %3s %12s %12s %9s\n", "kernel", "n", "serial_ms", "parallel_ms",
                "speedup");

    for (int n : {16, 18, 20}) {
        const std::vector<BenchCase> cases = {
            {"1q dense (u3)", GateOp::u3(n / 2, 1.1, 0.4, 2.0)},
            {"2q dense (cnot)", GateOp::cnot(1, n - 1)},
            {"3q dense (toffoli)", GateOp::ccx(0, n / 2, n - 1)},
        };
        for (const BenchCase& c : cases) {
            StateVector serial_state = random_state(n, 42);
            StateVector parallel_state = serial_state;
            const int reps = n >= 20 ? 6 : 10;

            time_gates(serial_state, c.op, Exec::serial, 2);  // warm up
            const double serial_ms = time_gates(serial_state, c.op, Exec::serial, reps);
            time_gates(parallel_state, c.op, Exec::parallel, 2);
            const double parallel_ms = time_gates(parallel_state, c.op, Exec::parallel, reps);

            bool identical = true;
            for (std::size_t i = 0; i < serial_state.dim(); ++i) {
                identical = identical && serial_state[i] == parallel_state[i];
            }
            std::printf("%-22s %3d %12.3f %12.3f %8.2fx %s\n", c.label, n, serial_ms,
                        parallel_ms, serial_ms / parallel_ms,
                        identical ? "" : "MISMATCH");
            if (!identical) return 1;
        }
    }

    // reduction kernels
    for (int n : {18, 20}) {
        const StateVector state = random_state(n, 7);
        const auto amps = state.amplitudes();
        for (auto exec : {Exec::serial, Exec::parallel}) {
            const auto start = std::chrono::steady_clock::now();
            double acc = 0.0;
            for (int r = 0; r < 20; ++r) acc += kernels::sum_abs2(amps, exec);
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count() /
                20;
            std::printf("%-22s %3d %12.3f   (sum=%.6f, %s)\n", "sum_abs2", n, ms, acc / 20,
                        exec == Exec::serial ? "serial" : "parallel");
        }
    }
    return 0;
}
