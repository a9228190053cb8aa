#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ftl/periodic_seq.hpp"
#include "ftl/ring_state.hpp"

namespace ftl {

struct UniformGrid;

// P-periodic initial density profile, bounded away from vacuum:
// rho0(x) in [nu, 1] with nu > 0.
struct InitialProfile {
    enum class Kind { piecewise_constant, sinusoid };

    Kind kind = Kind::piecewise_constant;
    double P = 1.0;
    double nu = 0.0;  // certified lower bound inf rho0

    // piecewise_constant: value vals[k] on [breaks[k], breaks[k+1]) with
    // breaks[0] == 0 and the last piece running to P.
    std::vector<double> breaks;
    std::vector<double> vals;

    // sinusoid: rho0(x) = mean + amplitude * sin(2 pi wavenumber x / P).
    double mean = 0.0;
    double amplitude = 0.0;
    int wavenumber = 1;

    double eval(double x) const;        // x taken mod P
    double cumulative(double x) const;  // F(x) = int_0^x rho0, x in [0, P]
    double mass() const { return cumulative(P); }
    double inf_value() const;
    double sup_value() const;

    // Throws vacuum_error if nu <= 0 or the profile dips below nu; throws
    // config_error on structural problems (range, breakpoints, amplitude).
    void validate() const;
};

InitialProfile constant_profile(double value, double P);
InitialProfile piecewise_profile(std::vector<double> breaks,
                                 std::vector<double> vals, double P, double nu);
InitialProfile sinusoid_profile(double mean, double amplitude, int wavenumber,
                                double P, double nu);

// Vehicle placement with exactly ell = mass/M units of integral of rho0
// between consecutive vehicles; x_0 = 0. Piecewise-constant profiles invert
// the cumulative mass in closed form, sinusoids by bracketing bisection to
// |dx| <= 1e-12 * P.
RingState equal_mass_partition(const InitialProfile& profile, std::size_t M);

// Pick M = round(mass / target_ell), then recompute ell = mass / M (the
// partition forces ell * M = mass exactly).
RingState equal_mass_partition_target_ell(const InitialProfile& profile,
                                          double target_ell);

// Piecewise-constant Eulerian density with the vehicle positions as
// breakpoints: value ell/gap_i on [x_i, x_{i+1}). Total mass is M*ell by
// construction.
struct DensityField {
    double P = 0.0;
    double t = 0.0;
    std::vector<double> x;    // breakpoints, strictly increasing, span < P
    std::vector<double> rho;  // value on [x[i], x[i+1])

    double mass() const;
};

DensityField density_field(const RingState& state);

// Spacing values y_i on a fixed unit lattice (cell width 1/M on [0,1)).
// Used for spacing-space norms only.
PeriodicSeq spacing_lattice(const RingState& state);

// Exact cell averages of the field on m uniform cells over [0, P): every
// breakpoint is split against the cell boundaries, no sampling error.
UniformGrid resample_to_grid(const DensityField& field, std::size_t m);

// int_0^P |a - b| dx on the merged breakpoint set (exact for piecewise-
// constant data). Throws config_error on period mismatch.
double l1_distance_fields(const DensityField& a, const DensityField& b);
double l1_distance_fields(const UniformGrid& a, const UniformGrid& b);

}  // namespace ftl
