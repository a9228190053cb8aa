// Timing comparison of the OpenMP kernels against their serial references.
// The parallel flavors are bit-identical by construction; this target only
// measures whether they pay off at a given size.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ftl/kernels.hpp"
#include "ftl/velocity.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& body, int reps) {
    const auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) body();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both flavors run serially\n");
#endif
    const ftl::VelocityModel model = ftl::greenshields();
    const ftl::WeightProfile weights = ftl::uniform_weights(10, 0.5);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> gap_dist(1.1, 4.0);
    std::uniform_real_distribution<double> rho_dist(0.05, 0.95);

    std::printf("%-16s %10s %12s %12s %8s\n", "kernel", "n", "serial ms",
                "omp ms", "speedup");
    const int reps = 20;
    for (std::size_t n : {1u << 14, 1u << 17, 1u << 20}) {
        std::vector<double> gaps(n), v(n), out_a(n), out_b(n), rho(n);
        const double ell = 1.0;
        for (auto& g : gaps) g = gap_dist(rng);
        for (auto& r : rho) r = rho_dist(rng);

        double ts = time_ms([&] {
            ftl::kernels::velocities_from_gaps_reference(model, ell, gaps, out_a);
        }, reps);
        double tp = time_ms([&] {
            ftl::kernels::velocities_from_gaps(model, ell, gaps, out_b);
        }, reps);
        std::printf("%-16s %10zu %12.3f %12.3f %7.2fx\n", "velocities", n, ts,
                    tp, ts / tp);

        ftl::kernels::velocities_from_gaps_reference(model, ell, gaps, v);
        ts = time_ms([&] {
            ftl::kernels::speed_stencil_reference(v, weights.c, weights.kappa, out_a);
        }, reps);
        tp = time_ms([&] {
            ftl::kernels::speed_stencil(v, weights.c, weights.kappa, out_b);
        }, reps);
        std::printf("%-16s %10zu %12.3f %12.3f %7.2fx\n", "speed_stencil", n,
                    ts, tp, ts / tp);

        ts = time_ms([&] {
            ftl::kernels::godunov_sweep_reference(model, 0.4, rho, out_a);
        }, reps);
        tp = time_ms([&] {
            ftl::kernels::godunov_sweep(model, 0.4, rho, out_b);
        }, reps);
        std::printf("%-16s %10zu %12.3f %12.3f %7.2fx\n", "godunov_sweep", n,
                    ts, tp, ts / tp);
    }
    return 0;
}
