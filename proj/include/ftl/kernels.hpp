#pragma once

#include <cstddef>
#include <span>

#include "ftl/velocity.hpp"

namespace ftl::kernels {

// Hot inner loops, each in two flavors: an OpenMP-parallel version used by
// the production paths and a plain serial reference kept for testing. Every
// output element depends only on read-only input, so the parallel flavor is
// bit-identical to the reference for any thread count.

// v_out[i] = v(ell / gap[i])
void velocities_from_gaps(const VelocityModel& m, double ell,
                          std::span<const double> gap, std::span<double> v_out);
void velocities_from_gaps_reference(const VelocityModel& m, double ell,
                                    std::span<const double> gap,
                                    std::span<double> v_out);

// out[i] = sum_j c[j] * v[(i+j) mod M] + kappa * (v[i] - v[(i-1) mod M])
void speed_stencil(std::span<const double> v, std::span<const double> c,
                   double kappa, std::span<double> out);
void speed_stencil_reference(std::span<const double> v,
                             std::span<const double> c, double kappa,
                             std::span<double> out);

// One forward-Euler conservation update with the Godunov interface flux G:
// out[j] = rho[j] - lambda * (G(rho[j], rho[j+1]) - G(rho[j-1], rho[j])),
// periodic in j. lambda = dt * m / P.
void godunov_sweep(const VelocityModel& m, double lambda,
                   std::span<const double> rho, std::span<double> out);
void godunov_sweep_reference(const VelocityModel& m, double lambda,
                             std::span<const double> rho,
                             std::span<double> out);

}  // namespace ftl::kernels
