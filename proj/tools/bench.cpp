// Benchmark: OpenMP kernels against the serial reference on large 1D grids.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mvgas/brenner.hpp"
#include "mvgas/euler.hpp"
#include "mvgas/ns_entropy.hpp"

using namespace mvgas;
using clk = std::chrono::steady_clock;

namespace {

constexpr double kPi = std::numbers::pi;

double seconds_since(clk::time_point t0) {
    return std::chrono::duration_cast<std::chrono::duration<double>>(clk::now() - t0)
        .count();
}

ConsField smooth_field(const Grid& g, const GasParams& gas) {
    ConsField f;
    f.resize(g.cells());
    for (int i = 0; i < g.cells(); ++i) {
        const double x = g.center(0, i);
        const double rho = 1.0 + 0.2 * std::sin(2.0 * kPi * x / g.length[0]);
        f.set_state(i, primitive_to_conservative(
                           make_primitive(rho, {0.1 * std::sin(2.0 * kPi * x), 0, 0},
                                          1.0 / rho, gas),
                           gas));
    }
    return f;
}

template <typename StepFn>
double time_steps(StepFn&& step, int nsteps) {
    const auto t0 = clk::now();
    for (int k = 0; k < nsteps; ++k) step();
    return seconds_since(t0);
}

} // namespace

int main(int argc, char** argv) {
    int n = 1 << 18;
    int nsteps = 40;
    if (argc > 1) n = std::atoi(argv[1]);
    if (argc > 2) nsteps = std::atoi(argv[2]);

    auto gas = GasParams::from_cv(1.5);
    auto g = build_grid(1, n, 1.0, Bc::Periodic);

#ifdef _OPENMP
    std::printf("cells %d, steps %d, omp threads %d\n", n, nsteps, omp_get_max_threads());
#else
    std::printf("cells %d, steps %d, no OpenMP\n", n, nsteps);
#endif
    std::printf("%-12s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

    {
        ConsField fs = smooth_field(g, gas), fp = fs;
        const double ts =
            time_steps([&] { step_euler(fs, g, gas, 0.45, Exec::Serial); }, nsteps);
        const double tp =
            time_steps([&] { step_euler(fp, g, gas, 0.45, Exec::Parallel); }, nsteps);
        std::printf("%-12s %12.4f %12.4f %8.2fx\n", "euler", ts, tp, ts / tp);
    }
    {
        NsField base;
        base.resize(g.cells());
        for (int i = 0; i < g.cells(); ++i) {
            const double x = g.center(0, i);
            base.rho[i] = 1.0 + 0.2 * std::sin(2.0 * kPi * x);
            base.Z[i] = base.rho[i];
            base.mx[i] = 0.1 * base.rho[i] * std::sin(2.0 * kPi * x);
        }
        NSEntropyParams prm;
        prm.epsilon = 1e-3;
        NsField fs = base, fp = base;
        const double ts = time_steps(
            [&] { step_ns_entropy(fs, g, prm, gas, 0.45, Exec::Serial); }, nsteps);
        const double tp = time_steps(
            [&] { step_ns_entropy(fp, g, prm, gas, 0.45, Exec::Parallel); }, nsteps);
        std::printf("%-12s %12.4f %12.4f %8.2fx\n", "ns-entropy", ts, tp, ts / tp);
    }
    {
        ConsField fs = smooth_field(g, gas), fp = fs;
        BrennerParams prm;
        prm.epsilon = 1e-3;
        const double ts = time_steps(
            [&] { step_brenner(fs, g, prm, gas, 0.45, Exec::Serial); }, nsteps);
        const double tp = time_steps(
            [&] { step_brenner(fp, g, prm, gas, 0.45, Exec::Parallel); }, nsteps);
        std::printf("%-12s %12.4f %12.4f %8.2fx\n", "brenner", ts, tp, ts / tp);
    }
    return 0;
}
