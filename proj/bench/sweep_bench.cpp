// Timing comparison of the serial reference sweep against the OpenMP path.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gyro/analysis.hpp"

using namespace gyro;

namespace {

double time_sweep(const SweepSpec& spec, ExecutionPolicy policy, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const CurveData data = sweep(spec, policy);
        const auto dt = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        if (data.rows.size() != spec.grid.size()) std::abort();
        best = std::min(best, dt);
    }
    return best;
}

}  // namespace

int main() {
    SweepSpec spec;
    spec.variable = SweepVariable::Phi;
    const int points = 4000;
    for (int i = 0; i < points; ++i)
        spec.grid.push_back(2.0 * pi * i / (points - 1));
    spec.params = reference_params(0.1);
    spec.layout = Topology{TopologyKind::Braided, Orientation::I, 2, 3};
    spec.with_sensitivity = true;  // dominates the per-point cost

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both policies run serially\n");
#endif

    const double serial = time_sweep(spec, ExecutionPolicy::Serial, 3);
    const double parallel = time_sweep(spec, ExecutionPolicy::Parallel, 3);
    std::printf("%d-point sensitivity sweep\n", points);
    std::printf("  serial reference: %8.1f ms\n", serial * 1e3);
    std::printf("  parallel:         %8.1f ms\n", parallel * 1e3);
    std::printf("  speedup:          %8.2fx\n", serial / parallel);
    return 0;
}
