#pragma once

#include <cstddef>
#include <vector>

#include "ftl/periodic_seq.hpp"

namespace ftl {

// M vehicles of length ell on a ring of period P. Positions are strictly
// increasing and span less than one period; the wrap is implicit. Gaps obey
// gap_i >= ell (equivalently y_i >= 1, rho_i <= 1): touching is legal,
// overlap is a collision.
struct RingState {
    double ell = 0.0;
    double P = 0.0;
    double t = 0.0;
    std::vector<double> x;

    std::size_t size() const { return x.size(); }

    double gap(std::size_t i) const {
        return i + 1 < x.size() ? x[i + 1] - x[i] : x[0] + P - x.back();
    }
    std::vector<double> gaps() const;

    PeriodicSeq spacings() const;   // y_i = gap_i / ell
    PeriodicSeq densities() const;  // rho_i = ell / gap_i

    double min_gap() const;
    double gap_sum() const;  // telescopes to P

    // Checks the structural invariants (ordering, gap positivity, M*ell <= P)
    // and throws config_error / collision_error on violation.
    void validate() const;
};

// Relative slack for the collision test: gap >= ell * (1 - collision_rtol).
// The exact-arithmetic statement is gap >= ell; one ulp of rounding per step
// must not spuriously trip the guard when gaps sit at the jam boundary.
inline constexpr double collision_rtol = 1e-12;

// Uniformly spaced state: M vehicles, gap P/M each, x[0] = 0.
RingState uniform_ring(std::size_t M, double ell, double P);

}  // namespace ftl
