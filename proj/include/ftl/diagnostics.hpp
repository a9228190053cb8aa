#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftl/dynamics.hpp"
#include "ftl/godunov.hpp"
#include "ftl/velocity.hpp"

namespace ftl {

// Every bounded quantity of one snapshot, recomputable from the snapshot
// alone (bit-identical on recomputation).
struct DiagnosticsRecord {
    double t = 0.0;
    double tv_rho = 0.0;
    double tv_y = 0.0;
    std::vector<double> entropy;  // ell * sum_i eta(y_i), one per entropy
    double rho_min = 0.0;
    double rho_max = 0.0;
    double gap_min_over_ell = 0.0;
    double speed_min = 0.0;
    std::optional<double> l1_vs_ref;
};

// eta(s) = s^2 plus Kruzkov levels spanning both one-sided shapes, applied in
// spacing variables.
std::vector<EntropyPair> default_entropy_battery(const VelocityModel& m);

DiagnosticsRecord record(const RingState& state, const WeightProfile& w,
                         const VelocityModel& m,
                         std::span<const EntropyPair> entropies,
                         const UniformGrid* ref = nullptr);

struct TvCheckResult {
    bool monotone = true;
    double first_violation_time = 0.0;
    double violation_magnitude = 0.0;
};

// Total variation of the density is non-increasing when drivers watch a
// single vehicle ahead. Requires a trajectory generated with N == 1 and
// throws config_error otherwise (the claim is specific to that case).
TvCheckResult tv_nonincreasing_check(const Trajectory& traj, double tol);

struct TvGrowthResult {
    double max_tv = 0.0;
    double initial_tv = 0.0;
    bool exceeds_initial = false;
};

// sup_t TV(rho(t)) along a trajectory and whether it ever exceeds the
// initial variation (it does for wide stencils).
TvGrowthResult tv_growth_check(const Trajectory& traj);

// CSV emission: header
// t,tv_rho,tv_y,entropy_<name>...,rho_min,rho_max,gap_min_over_ell,speed_min,l1_vs_ref
void write_diagnostics_csv(const std::string& path,
                           std::span<const DiagnosticsRecord> records,
                           std::span<const EntropyPair> entropies);

}  // namespace ftl
