#include "ftl/kernels.hpp"

#include <cstddef>

#include "ftl/godunov.hpp"

namespace ftl::kernels {

namespace {
// Below this size the parallel-for spawn costs more than the loop.
constexpr std::ptrdiff_t parallel_threshold = 4096;
}

void velocities_from_gaps_reference(const VelocityModel& m, double ell,
                                    std::span<const double> gap,
                                    std::span<double> v_out) {
    for (std::size_t i = 0; i < gap.size(); ++i)
        v_out[i] = m.eval(ell / gap[i]);
}

void velocities_from_gaps(const VelocityModel& m, double ell,
                          std::span<const double> gap,
                          std::span<double> v_out) {
    const auto n = static_cast<std::ptrdiff_t>(gap.size());
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        v_out[static_cast<std::size_t>(i)] =
            m.eval(ell / gap[static_cast<std::size_t>(i)]);
}

void speed_stencil_reference(std::span<const double> v,
                             std::span<const double> c, double kappa,
                             std::span<double> out) {
    const std::size_t M = v.size();
    for (std::size_t i = 0; i < M; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            std::size_t idx = i + j;
            if (idx >= M) idx -= M * (idx / M);
            s += c[j] * v[idx];
        }
        const std::size_t prev = i == 0 ? M - 1 : i - 1;
        out[i] = s + kappa * (v[i] - v[prev]);
    }
}

void speed_stencil(std::span<const double> v, std::span<const double> c,
                   double kappa, std::span<double> out) {
    const auto M = static_cast<std::ptrdiff_t>(v.size());
    const auto nc = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static) if (M >= parallel_threshold)
    for (std::ptrdiff_t i = 0; i < M; ++i) {
        double s = 0.0;
        for (std::ptrdiff_t j = 0; j < nc; ++j) {
            std::ptrdiff_t idx = i + j;
            while (idx >= M) idx -= M;
            s += c[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(idx)];
        }
        const std::ptrdiff_t prev = i == 0 ? M - 1 : i - 1;
        out[static_cast<std::size_t>(i)] =
            s + kappa * (v[static_cast<std::size_t>(i)] -
                         v[static_cast<std::size_t>(prev)]);
    }
}

void godunov_sweep_reference(const VelocityModel& m, double lambda,
                             std::span<const double> rho,
                             std::span<double> out) {
    const std::size_t n = rho.size();
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t jm = j == 0 ? n - 1 : j - 1;
        const std::size_t jp = j + 1 == n ? 0 : j + 1;
        out[j] = rho[j] - lambda * (godunov_flux(m, rho[j], rho[jp]) -
                                    godunov_flux(m, rho[jm], rho[j]));
    }
}

void godunov_sweep(const VelocityModel& m, double lambda,
                   std::span<const double> rho, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(rho.size());
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const std::size_t jm = ju == 0 ? static_cast<std::size_t>(n) - 1 : ju - 1;
        const std::size_t jp =
            j + 1 == n ? 0 : ju + 1;
        out[ju] = rho[ju] - lambda * (godunov_flux(m, rho[ju], rho[jp]) -
                                      godunov_flux(m, rho[jm], rho[ju]));
    }
}

}  // namespace ftl::kernels
