// Benchmark of the OpenMP kernels against their serial reference
// implementations: partitioned sampling and grid evaluation.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cubesep/batch.hpp"
#include "cubesep/domain.hpp"
#include "cubesep/montecarlo.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_ms(F&& f) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("threads: %d\n", threads);
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        cubesep::mc::SimConfig config;
        config.sample_count = 4000000;
        config.seed = 7;
        const int partitions = threads * 4;
        std::vector<double> a, b;
        const double ts =
            time_ms([&] { a = cubesep::mc::sample_separations_reference(config, partitions); });
        const double tp =
            time_ms([&] { b = cubesep::mc::sample_separations_parallel(config, partitions); });
        row("sampling (4e6 pairs)", ts, tp);
        if (a != b) {
            std::printf("MISMATCH: parallel sampling differs from reference\n");
            return 1;
        }
    }

    {
        std::vector<double> grid(2000000);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = cubesep::kSqrt3 * (static_cast<double>(i) + 0.5) / grid.size();
        std::vector<double> a, b;
        const double ts = time_ms([&] { a = cubesep::batch::pdf_grid_reference(grid); });
        const double tp = time_ms([&] { b = cubesep::batch::pdf_grid_parallel(grid); });
        row("pdf grid (2e6 points)", ts, tp);
        if (a != b) {
            std::printf("MISMATCH: parallel pdf grid differs from reference\n");
            return 1;
        }
    }

    {
        std::vector<double> grid(90);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = cubesep::kSqrt3 * (static_cast<double>(i) + 0.5) / grid.size();
        std::vector<double> a, b;
        const double ts =
            time_ms([&] { a = cubesep::batch::oracle_grid_reference(grid, 1e-9); });
        const double tp = time_ms([&] { b = cubesep::batch::oracle_grid_parallel(grid, 1e-9); });
        row("oracle grid (90 points)", ts, tp);
        if (a != b) {
            std::printf("MISMATCH: parallel oracle grid differs from reference\n");
            return 1;
        }
    }

    return 0;
}
