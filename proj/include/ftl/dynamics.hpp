#pragma once

#include <limits>
#include <span>
#include <vector>

#include "ftl/periodic_seq.hpp"
#include "ftl/ring_state.hpp"
#include "ftl/velocity.hpp"

namespace ftl {

// Per-vehicle speed: dx_i/dt = sum_j c_j v(ell/gap_{i+j}) + kappa (v_i - v_{i-1}).
// Entries lie in [-kappa, 1+kappa]; negative speeds are possible for kappa > 0
// and are reported, not forbidden. Throws collision_error if any gap < ell.
PeriodicSeq vehicle_speeds(const RingState& state, const WeightProfile& w,
                           const VelocityModel& m);

// d y_i / dt and d rho_i / dt. Both are derived from one shared stencil
// evaluation so the identity rho' = -rho^2 y' holds to rounding.
PeriodicSeq spacing_rhs(const RingState& state, const WeightProfile& w,
                        const VelocityModel& m);
PeriodicSeq density_rhs(const RingState& state, const WeightProfile& w,
                        const VelocityModel& m);

// Largest step the explicit schemes accept: ell / ((1+2 kappa) * lip).
// With kappa = 0, lip = 1 this is the classical dt <= ell rule.
double step_bound(const RingState& state, const WeightProfile& w,
                  const VelocityModel& m);

// Forward Euler on the position system. Enforces the step bound unless
// `unsafe_dt`; checks gaps after the step and throws collision_error naming
// the offending vehicle.
RingState euler_step(const RingState& state, const WeightProfile& w,
                     const VelocityModel& m, double dt, bool unsafe_dt = false);

// Classical 4-stage step; high-accuracy proxy for the continuous-time system.
RingState rk4_step(const RingState& state, const WeightProfile& w,
                   const VelocityModel& m, double dt, bool unsafe_dt = false);

enum class Scheme { euler, rk4 };

struct Trajectory {
    std::vector<RingState> snapshots;
    WeightProfile weights;
    VelocityModel model;
    double min_speed = std::numeric_limits<double>::infinity();
    std::size_t steps = 0;
};

// March from init to init.t + T, emitting snapshots at the requested sample
// times. Steps are locally shortened (never lengthened) to land exactly on
// sample times and on the horizon. sample_times must be sorted and lie in
// [init.t, init.t + T]. Errors from stepping propagate with step index and
// time attached.
Trajectory simulate(const RingState& init, const WeightProfile& w,
                    const VelocityModel& m, Scheme scheme, double dt, double T,
                    std::span<const double> sample_times,
                    bool unsafe_dt = false);

// Convenience: snapshot after every step (plus the initial state).
Trajectory simulate_every_step(const RingState& init, const WeightProfile& w,
                               const VelocityModel& m, Scheme scheme, double dt,
                               double T, bool unsafe_dt = false);

}  // namespace ftl
