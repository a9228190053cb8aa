#include "ftl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ftl/errors.hpp"
#include "ftl/kernels.hpp"
#include "ftl/summation.hpp"

namespace ftl {

std::vector<double> RingState::gaps() const {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = gap(i);
    return g;
}

PeriodicSeq RingState::spacings() const {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = gap(i) / ell;
    return PeriodicSeq(std::move(y));
}

PeriodicSeq RingState::densities() const {
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = ell / gap(i);
    return PeriodicSeq(std::move(r));
}

double RingState::min_gap() const {
    double g = gap(0);
    for (std::size_t i = 1; i < x.size(); ++i) g = std::min(g, gap(i));
    return g;
}

double RingState::gap_sum() const {
    return pairwise_sum_of(x.size(), [this](std::size_t i) { return gap(i); });
}

void RingState::validate() const {
    if (x.empty()) throw config_error("ring state: no vehicles");
    if (!(ell > 0.0)) throw config_error("ring state: vehicle length must be positive");
    if (!(P > 0.0)) throw config_error("ring state: period must be positive");
    if (static_cast<double>(x.size()) * ell > P * (1.0 + 1e-12))
        throw config_error("ring state: M * ell exceeds the ring period");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1]))
            throw config_error("ring state: positions must be strictly increasing");
    if (!(x.back() - x.front() < P))
        throw config_error("ring state: positions must span less than one period");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (gap(i) < ell * (1.0 - collision_rtol))
            throw collision_error("ring state: vehicles " + std::to_string(i) +
                                      " and " + std::to_string((i + 1) % x.size()) +
                                      " overlap",
                                  i, t);
}

RingState uniform_ring(std::size_t M, double ell, double P) {
    RingState s;
    s.ell = ell;
    s.P = P;
    s.x.resize(M);
    for (std::size_t i = 0; i < M; ++i)
        s.x[i] = P * static_cast<double>(i) / static_cast<double>(M);
    s.validate();
    return s;
}

namespace {

// Gap extraction with the collision check shared by all right-hand sides.
// `when` is only for the error message.
std::vector<double> checked_gaps(std::span<const double> x, double ell,
                                 double P, double when) {
    const std::size_t M = x.size();
    std::vector<double> g(M);
    for (std::size_t i = 0; i < M; ++i) {
        g[i] = i + 1 < M ? x[i + 1] - x[i] : x[0] + P - x[M - 1];
        if (g[i] < ell * (1.0 - collision_rtol))
            throw collision_error(
                "collision: gap " + std::to_string(g[i]) + " behind vehicle " +
                    std::to_string((i + 1) % M) + " dropped below ell at t = " +
                    std::to_string(when),
                i, when);
    }
    return g;
}

struct SpeedEval {
    std::vector<double> speeds;
    double min_speed;
};

SpeedEval eval_speeds(std::span<const double> x, double ell, double P,
                      const WeightProfile& w, const VelocityModel& m,
                      double when) {
    const auto g = checked_gaps(x, ell, P, when);
    std::vector<double> v(g.size()), s(g.size());
    kernels::velocities_from_gaps(m, ell, g, v);
    kernels::speed_stencil(v, w.c, w.kappa, s);
    double mn = s[0];
    for (double si : s) mn = std::min(mn, si);
    return {std::move(s), mn};
}

void check_step_bound(const RingState& state, const WeightProfile& w,
                      const VelocityModel& m, double dt, bool unsafe_dt) {
    if (unsafe_dt) return;
    const double bound = step_bound(state, w, m);
    if (dt > bound * (1.0 + 1e-12))
        throw config_error("step size " + std::to_string(dt) +
                           " exceeds the collision-safe bound ell/((1+2kappa)*lip) = " +
                           std::to_string(bound) + " (use unsafe_dt to override)");
}

// Keep the position window near the origin on long runs; shifting every
// vehicle by the same whole period leaves all gaps unchanged.
void rewind_window(RingState& s) {
    while (s.x[0] >= s.P)
        for (double& xi : s.x) xi -= s.P;
    while (s.x[0] < -s.P)
        for (double& xi : s.x) xi += s.P;
}

RingState euler_step_impl(const RingState& state, const WeightProfile& w,
                          const VelocityModel& m, double dt, bool unsafe_dt,
                          double* min_speed_out) {
    check_step_bound(state, w, m, dt, unsafe_dt);
    auto ev = eval_speeds(state.x, state.ell, state.P, w, m, state.t);
    if (min_speed_out) *min_speed_out = ev.min_speed;
    RingState next = state;
    for (std::size_t i = 0; i < next.x.size(); ++i)
        next.x[i] += dt * ev.speeds[i];
    next.t = state.t + dt;
    rewind_window(next);
    checked_gaps(next.x, next.ell, next.P, next.t);  // post-step guard
    return next;
}

RingState rk4_step_impl(const RingState& state, const WeightProfile& w,
                        const VelocityModel& m, double dt, bool unsafe_dt,
                        double* min_speed_out) {
    check_step_bound(state, w, m, dt, unsafe_dt);
    const std::size_t M = state.x.size();

    auto k1 = eval_speeds(state.x, state.ell, state.P, w, m, state.t);
    if (min_speed_out) *min_speed_out = k1.min_speed;

    std::vector<double> xs(M);
    for (std::size_t i = 0; i < M; ++i) xs[i] = state.x[i] + 0.5 * dt * k1.speeds[i];
    auto k2 = eval_speeds(xs, state.ell, state.P, w, m, state.t + 0.5 * dt);

    for (std::size_t i = 0; i < M; ++i) xs[i] = state.x[i] + 0.5 * dt * k2.speeds[i];
    auto k3 = eval_speeds(xs, state.ell, state.P, w, m, state.t + 0.5 * dt);

    for (std::size_t i = 0; i < M; ++i) xs[i] = state.x[i] + dt * k3.speeds[i];
    auto k4 = eval_speeds(xs, state.ell, state.P, w, m, state.t + dt);

    RingState next = state;
    for (std::size_t i = 0; i < M; ++i)
        next.x[i] += dt / 6.0 *
                     (k1.speeds[i] + 2.0 * k2.speeds[i] + 2.0 * k3.speeds[i] +
                      k4.speeds[i]);
    next.t = state.t + dt;
    rewind_window(next);
    checked_gaps(next.x, next.ell, next.P, next.t);
    return next;
}

}  // namespace

PeriodicSeq vehicle_speeds(const RingState& state, const WeightProfile& w,
                           const VelocityModel& m) {
    w.validate();
    auto ev = eval_speeds(state.x, state.ell, state.P, w, m, state.t);
    return PeriodicSeq(std::move(ev.speeds));
}

namespace {

// Shared core of both Lagrangian right-hand sides:
// g_i = (forward difference of the averaged velocity) + kappa * (v_{i+1} - 2 v_i + v_{i-1}).
std::vector<double> stencil_core(const RingState& state, const WeightProfile& w,
                                 const VelocityModel& m) {
    w.validate();
    const std::size_t M = state.x.size();
    const auto g = checked_gaps(state.x, state.ell, state.P, state.t);
    std::vector<double> v(M), vbar(M), core(M);
    kernels::velocities_from_gaps(m, state.ell, g, v);
    kernels::speed_stencil(v, w.c, 0.0, vbar);  // averaged velocity only
    for (std::size_t i = 0; i < M; ++i) {
        const std::size_t ip = i + 1 == M ? 0 : i + 1;
        const std::size_t im = i == 0 ? M - 1 : i - 1;
        core[i] = (vbar[ip] - vbar[i]) + w.kappa * (v[ip] - 2.0 * v[i] + v[im]);
    }
    return core;
}

}  // namespace

PeriodicSeq spacing_rhs(const RingState& state, const WeightProfile& w,
                        const VelocityModel& m) {
    auto core = stencil_core(state, w, m);
    for (double& c : core) c /= state.ell;
    return PeriodicSeq(std::move(core));
}

PeriodicSeq density_rhs(const RingState& state, const WeightProfile& w,
                        const VelocityModel& m) {
    auto core = stencil_core(state, w, m);
    for (std::size_t i = 0; i < core.size(); ++i) {
        const double rho = state.ell / state.gap(i);
        core[i] *= -rho * rho / state.ell;
    }
    return PeriodicSeq(std::move(core));
}

double step_bound(const RingState& state, const WeightProfile& w,
                  const VelocityModel& m) {
    return state.ell / ((1.0 + 2.0 * w.kappa) * m.lip);
}

RingState euler_step(const RingState& state, const WeightProfile& w,
                     const VelocityModel& m, double dt, bool unsafe_dt) {
    w.validate();
    return euler_step_impl(state, w, m, dt, unsafe_dt, nullptr);
}

RingState rk4_step(const RingState& state, const WeightProfile& w,
                   const VelocityModel& m, double dt, bool unsafe_dt) {
    w.validate();
    return rk4_step_impl(state, w, m, dt, unsafe_dt, nullptr);
}

Trajectory simulate(const RingState& init, const WeightProfile& w,
                    const VelocityModel& m, Scheme scheme, double dt, double T,
                    std::span<const double> sample_times, bool unsafe_dt) {
    w.validate();
    init.validate();
    if (!(dt > 0.0)) throw config_error("simulate: dt must be positive");
    if (!(T >= 0.0)) throw config_error("simulate: horizon must be nonnegative");
    const double t_end = init.t + T;
    const double t_eps = 1e-12 * std::max({1.0, std::abs(t_end), dt});
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        if (i > 0 && sample_times[i] < sample_times[i - 1])
            throw config_error("simulate: sample times must be sorted");
        if (sample_times[i] < init.t - t_eps || sample_times[i] > t_end + t_eps)
            throw config_error("simulate: sample times must lie within the horizon");
    }

    Trajectory out;
    out.weights = w;
    out.model = m;
    RingState cur = init;
    std::size_t si = 0;

    auto emit_due = [&] {
        while (si < sample_times.size() && sample_times[si] <= cur.t + t_eps) {
            out.snapshots.push_back(cur);
            ++si;
        }
    };
    emit_due();

    while (cur.t < t_end - t_eps) {
        // Never lengthen a step: land exactly on the next sample time or the
        // horizon when they are closer than dt.
        double next_stop = si < sample_times.size()
                               ? std::min(sample_times[si], t_end)
                               : t_end;
        double dt_step = dt;
        bool snap = false;
        if (next_stop - cur.t <= dt * (1.0 + 1e-12)) {
            dt_step = next_stop - cur.t;
            snap = true;
        }
        if (dt_step <= 0.0) break;
        double step_min_speed = 0.0;
        try {
            cur = scheme == Scheme::euler
                      ? euler_step_impl(cur, w, m, dt_step, unsafe_dt, &step_min_speed)
                      : rk4_step_impl(cur, w, m, dt_step, unsafe_dt, &step_min_speed);
        } catch (const collision_error& e) {
            throw collision_error("step " + std::to_string(out.steps) + ": " +
                                      e.what(),
                                  e.index, e.time);
        }
        if (snap) cur.t = next_stop;
        out.min_speed = std::min(out.min_speed, step_min_speed);
        ++out.steps;
        emit_due();
    }
    emit_due();
    return out;
}

Trajectory simulate_every_step(const RingState& init, const WeightProfile& w,
                               const VelocityModel& m, Scheme scheme, double dt,
                               double T, bool unsafe_dt) {
    // Sampling on the step lattice keeps the nominal dt untouched: every stop
    // is an exact multiple of dt (plus one short final step onto T).
    std::vector<double> samples;
    samples.push_back(init.t);
    const double t_end = init.t + T;
    for (std::size_t k = 1;; ++k) {
        const double tk = init.t + static_cast<double>(k) * dt;
        if (tk >= t_end - 1e-12 * std::max(1.0, std::abs(t_end))) break;
        samples.push_back(tk);
    }
    if (T > 0.0) samples.push_back(t_end);
    return simulate(init, w, m, scheme, dt, T, samples, unsafe_dt);
}

}  // namespace ftl
