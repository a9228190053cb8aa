#pragma once

#include <cstddef>
#include <vector>

#include "ftl/eulerian.hpp"
#include "ftl/velocity.hpp"

namespace ftl {

// Cell-averaged density on m uniform cells over [0, P).
struct UniformGrid {
    double P = 0.0;
    std::size_t m = 0;
    double t = 0.0;
    std::vector<double> avg;

    double h() const { return P / static_cast<double>(m); }
    double mass() const;
};

// Exact cell averages of an initial profile (no sampling error; uses the
// cumulative mass).
UniformGrid grid_average(const InitialProfile& profile, std::size_t m);

// Godunov interface flux for the unimodal LWR flux:
//   a <= b: min of f over [a, b] (an endpoint),
//   a >  b: max of f over [b, a] (f(argmax) if interior, else an endpoint).
// Throws config_error outside [0,1].
double godunov_flux(const VelocityModel& m, double a, double b);

// One conservative update with periodic indices. CFL: dt <= h / max|f'|.
UniformGrid godunov_step(const UniformGrid& grid, const VelocityModel& m,
                         double dt);

// March to T with dt = cfl * h / max|f'|, final partial step landing on T
// exactly.
UniformGrid godunov_solve(const UniformGrid& rho0, const VelocityModel& m,
                          double T, double cfl = 0.9);

// Closed-form entropy solution of the single Riemann problem (jump at the
// origin) evaluated at xi = x/t. Greenshields only; other models throw
// unsupported_error.
double exact_riemann(const VelocityModel& m, double rhoL, double rhoR,
                     double xi);

// Entropy solution on the ring [0,P) for data rhoL on [0,P/2), rhoR on
// [P/2,P): the jump at P/2 plus its periodic counterpart at 0. Valid while
// the two wave fans stay disjoint (t * max|f'| <= P/4).
double exact_riemann_ring(const VelocityModel& m, double rhoL, double rhoR,
                          double P, double t, double x);

// x-locations (mod P) where the ring solution is not smooth at time t:
// shock positions and rarefaction fan edges of both jumps.
std::vector<double> riemann_ring_kinks(const VelocityModel& m, double rhoL,
                                       double rhoR, double P, double t);

// Exact integral over [0,P) of |grid - exact ring solution|; the solution is
// piecewise linear in x, so each merged interval integrates in closed form.
double l1_error_vs_riemann_ring(const UniformGrid& grid,
                                const VelocityModel& m, double rhoL,
                                double rhoR, double t);

// CSV export with columns `x_center, rho`, one row per cell.
void write_grid_csv(const std::string& path, const UniformGrid& grid);

// Kruzkov entropy residual of one step at level k:
//   sum_j [ |rho^{n+1}_j - k| - |rho^n_j - k| + lambda (Q_{j+1/2} - Q_{j-1/2}) ]
// with Q(u,w) = G(u v k, w v k) - G(u ^ k, w ^ k). Nonpositive (up to
// rounding) for the monotone scheme.
double kruzkov_step_residual(const UniformGrid& before,
                             const UniformGrid& after, const VelocityModel& m,
                             double dt, double k);

}  // namespace ftl
