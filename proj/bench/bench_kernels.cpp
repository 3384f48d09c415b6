// Timing comparison between the full-face serial reference kernels and the
// culled OpenMP production kernels, plus an end-to-end spot-search timing.
// The value columns must agree exactly; a nonzero diff is a bug.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vlcirs/optimizer.hpp"
#include "vlcirs/radiometry.hpp"
#include "vlcirs/secrecy.hpp"

using namespace vlcirs;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f, int repeats) {
    const auto t0 = clock_type::now();
    for (int k = 0; k < repeats; ++k) f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

void report(const char* name, double ref_ms, double prod_ms, double ref_val, double prod_val) {
    std::printf("%-28s %12.3f %12.3f %9.1fx %13.6e\n", name, ref_ms, prod_ms,
                ref_ms / prod_ms, ref_val - prod_val);
}

} // namespace

int main(int argc, char** argv) {
    double edge = 1e-3;
    int repeats = 5;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--edge") == 0 && i + 1 < argc) {
            edge = std::atof(argv[++i]);
        } else if (std::strcmp(argv[i], "--repeats") == 0 && i + 1 < argc) {
            repeats = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: bench_kernels [--edge E] [--repeats N]\n");
            return 1;
        }
    }

    Scenario sc = default_scenario();
    sc.quadrature.element_edge = edge;
    const OrientationGrid fob_grid = orientation_grid_for_spot(sc, fob_spot(sc));

#ifdef _OPENMP
    std::printf("threads: %d, quadrature edge: %g m, repeats: %d\n",
                omp_get_max_threads(), edge, repeats);
#else
    std::printf("threads: 1 (no OpenMP), quadrature edge: %g m, repeats: %d\n", edge, repeats);
#endif
    std::printf("%-28s %12s %12s %10s %13s\n", "kernel", "reference ms", "production ms",
                "speedup", "value diff");

    double ref_val = 0, prod_val = 0;
    const double ref_ms =
        time_ms([&] { ref_val = reference::los_gain(sc, sc.bob); }, repeats);
    const double prod_ms = time_ms([&] { prod_val = los_gain(sc, sc.bob); }, repeats);
    report("los_gain", ref_ms, prod_ms, ref_val, prod_val);

    const double ref_irs_ms =
        time_ms([&] { ref_val = reference::irs_gain(sc, fob_grid, sc.bob); }, repeats);
    const double prod_irs_ms =
        time_ms([&] { prod_val = irs_gain(sc, fob_grid, sc.bob); }, repeats);
    report("irs_gain (focus grid)", ref_irs_ms, prod_irs_ms, ref_val, prod_val);

    const double ref_irr_ms = time_ms(
        [&] { ref_val = reference::irs_irradiance(sc, 2, 2, fob_grid.at(2, 2), sc.eve); },
        repeats);
    const double prod_irr_ms = time_ms(
        [&] { prod_val = irs_irradiance(sc, 2, 2, fob_grid.at(2, 2), sc.eve); }, repeats);
    report("irs_irradiance (1 mirror)", ref_irr_ms, prod_irr_ms, ref_val, prod_val);

    PsoParams params;
    OptimizationResult res;
    const double pso_ms = time_ms([&] { res = pso_ii(sc, params); }, 1);
    std::printf("%-28s %12s %12.3f %10s rate=%.6f (%zu evaluations)\n", "pso_ii (production only)",
                "-", pso_ms, "-", res.best_fitness, res.evaluations);
    return 0;
}
