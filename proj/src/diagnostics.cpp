#include "ftl/diagnostics.hpp"

#include <algorithm>
#include <fstream>

#include "ftl/csv.hpp"
#include "ftl/errors.hpp"
#include "ftl/eulerian.hpp"
#include "ftl/summation.hpp"

namespace ftl {

std::vector<EntropyPair> default_entropy_battery(const VelocityModel& m) {
    std::vector<EntropyPair> battery;
    battery.push_back(quadratic_pair(m));
    // Kruzkov levels in spacing variables, spanning both one-sided shapes
    // around typical spacing ranges.
    for (double k : {1.25, 1.5, 2.0, 3.0, 5.0})
        battery.push_back(kruzkov_pair(m, k));
    return battery;
}

DiagnosticsRecord record(const RingState& state, const WeightProfile& w,
                         const VelocityModel& m,
                         std::span<const EntropyPair> entropies,
                         const UniformGrid* ref) {
    DiagnosticsRecord rec;
    rec.t = state.t;

    const PeriodicSeq rho = state.densities();
    const PeriodicSeq y = state.spacings();
    rec.tv_rho = tv_periodic(rho);
    rec.tv_y = tv_periodic(y);

    rec.entropy.reserve(entropies.size());
    for (const auto& pair : entropies)
        rec.entropy.push_back(state.ell * pairwise_sum_of(y.period(), [&](std::size_t i) {
            return pair.eta(y.raw(i));
        }));

    rec.rho_min = *std::min_element(rho.values().begin(), rho.values().end());
    rec.rho_max = *std::max_element(rho.values().begin(), rho.values().end());
    rec.gap_min_over_ell = state.min_gap() / state.ell;

    const PeriodicSeq speeds = vehicle_speeds(state, w, m);
    rec.speed_min = *std::min_element(speeds.values().begin(), speeds.values().end());

    if (ref != nullptr)
        rec.l1_vs_ref =
            l1_distance_fields(resample_to_grid(density_field(state), ref->m), *ref);
    return rec;
}

TvCheckResult tv_nonincreasing_check(const Trajectory& traj, double tol) {
    if (traj.weights.N != 1)
        throw config_error("tv check: the variation-diminishing claim is "
                           "specific to a single-vehicle lookahead (N == 1)");
    TvCheckResult res;
    double prev = 0.0;
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        const double tv = tv_periodic(traj.snapshots[s].densities());
        if (s > 0 && tv > prev + tol) {
            res.monotone = false;
            res.first_violation_time = traj.snapshots[s].t;
            res.violation_magnitude = tv - prev;
            return res;
        }
        prev = tv;
    }
    return res;
}

TvGrowthResult tv_growth_check(const Trajectory& traj) {
    TvGrowthResult res;
    if (traj.snapshots.empty()) return res;
    res.initial_tv = tv_periodic(traj.snapshots.front().densities());
    res.max_tv = res.initial_tv;
    for (const auto& snap : traj.snapshots)
        res.max_tv = std::max(res.max_tv, tv_periodic(snap.densities()));
    // a 1e-12 relative guard keeps per-step rounding noise from counting as growth
    res.exceeds_initial =
        res.max_tv > res.initial_tv + 1e-12 * std::max(1.0, res.initial_tv);
    return res;
}

void write_diagnostics_csv(const std::string& path,
                           std::span<const DiagnosticsRecord> records,
                           std::span<const EntropyPair> entropies) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << "t,tv_rho,tv_y";
    for (const auto& pair : entropies) out << ",entropy_" << pair.name;
    out << ",rho_min,rho_max,gap_min_over_ell,speed_min,l1_vs_ref\n";
    for (const auto& r : records) {
        out << format_double(r.t) << ',' << format_double(r.tv_rho) << ','
            << format_double(r.tv_y);
        for (double e : r.entropy) out << ',' << format_double(e);
        out << ',' << format_double(r.rho_min) << ',' << format_double(r.rho_max)
            << ',' << format_double(r.gap_min_over_ell) << ','
            << format_double(r.speed_min) << ',';
        if (r.l1_vs_ref) out << format_double(*r.l1_vs_ref);
        out << '\n';
    }
}

}  // namespace ftl
