#include "ftl/eulerian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ftl/errors.hpp"
#include "ftl/godunov.hpp"
#include "ftl/summation.hpp"

namespace ftl {

namespace {

double wrap_position(double x, double P) {
    double r = std::fmod(x, P);
    if (r < 0.0) r += P;
    if (r >= P) r = 0.0;  // fmod can land on P through rounding
    return r;
}

}  // namespace

double InitialProfile::eval(double x) const {
    const double xi = wrap_position(x, P);
    if (kind == Kind::sinusoid) {
        return mean + amplitude *
                          std::sin(2.0 * std::numbers::pi * wavenumber * xi / P);
    }
    // last piece whose start is <= xi
    std::size_t k = breaks.size() - 1;
    while (k > 0 && breaks[k] > xi) --k;
    return vals[k];
}

double InitialProfile::cumulative(double x) const {
    if (kind == Kind::sinusoid) {
        const double om = 2.0 * std::numbers::pi * wavenumber / P;
        return mean * x + amplitude / om * (1.0 - std::cos(om * x));
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < breaks.size(); ++k) {
        const double lo = breaks[k];
        const double hi = k + 1 < breaks.size() ? breaks[k + 1] : P;
        if (x <= lo) break;
        acc += vals[k] * (std::min(x, hi) - lo);
    }
    return acc;
}

double InitialProfile::inf_value() const {
    if (kind == Kind::sinusoid) return mean - std::abs(amplitude);
    return *std::min_element(vals.begin(), vals.end());
}

double InitialProfile::sup_value() const {
    if (kind == Kind::sinusoid) return mean + std::abs(amplitude);
    return *std::max_element(vals.begin(), vals.end());
}

void InitialProfile::validate() const {
    if (!(P > 0.0)) throw config_error("profile: period must be positive");
    if (!(nu > 0.0))
        throw vacuum_error("profile: vacuum bound nu must be positive");
    if (kind == Kind::piecewise_constant) {
        if (breaks.empty() || breaks.size() != vals.size())
            throw config_error("profile: need matching breakpoints and values");
        if (breaks.front() != 0.0)
            throw config_error("profile: first breakpoint must be 0");
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
            if (!(breaks[k] < breaks[k + 1]))
                throw config_error("profile: breakpoints must be strictly increasing");
        if (!(breaks.back() < P))
            throw config_error("profile: breakpoints must lie inside [0, P)");
    } else {
        if (amplitude < 0.0) throw config_error("profile: amplitude must be nonnegative");
        if (wavenumber < 1) throw config_error("profile: wavenumber must be a positive integer");
    }
    if (inf_value() < nu)
        throw vacuum_error("profile: density dips below the certified bound nu");
    if (sup_value() > 1.0 + 1e-12)
        throw config_error("profile: density exceeds the jam value 1");
}

InitialProfile constant_profile(double value, double P) {
    return piecewise_profile({0.0}, {value}, P, value);
}

InitialProfile piecewise_profile(std::vector<double> breaks,
                                 std::vector<double> vals, double P, double nu) {
    InitialProfile p;
    p.kind = InitialProfile::Kind::piecewise_constant;
    p.breaks = std::move(breaks);
    p.vals = std::move(vals);
    p.P = P;
    p.nu = nu;
    p.validate();
    return p;
}

InitialProfile sinusoid_profile(double mean, double amplitude, int wavenumber,
                                double P, double nu) {
    InitialProfile p;
    p.kind = InitialProfile::Kind::sinusoid;
    p.mean = mean;
    p.amplitude = amplitude;
    p.wavenumber = wavenumber;
    p.P = P;
    p.nu = nu;
    p.validate();
    return p;
}

namespace {

// Invert the cumulative mass: the unique x with F(x) = target. Closed form
// piece by piece for piecewise-constant profiles; bracketing bisection on the
// monotone F for sinusoids, to |dx| <= 1e-12 * P.
double invert_cumulative(const InitialProfile& prof, double target,
                         double lower_hint) {
    if (prof.kind == InitialProfile::Kind::piecewise_constant) {
        double acc = 0.0;
        for (std::size_t k = 0; k < prof.breaks.size(); ++k) {
            const double lo = prof.breaks[k];
            const double hi = k + 1 < prof.breaks.size() ? prof.breaks[k + 1] : prof.P;
            const double piece = prof.vals[k] * (hi - lo);
            if (target <= acc + piece || k + 1 == prof.breaks.size())
                return lo + (target - acc) / prof.vals[k];
            acc += piece;
        }
        throw config_error("profile inversion: empty profile");
    }
    double lo = lower_hint, hi = prof.P;
    if (prof.cumulative(lo) > target) lo = 0.0;
    while (hi - lo > 1e-12 * prof.P) {
        const double mid = 0.5 * (lo + hi);
        (prof.cumulative(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

RingState equal_mass_partition(const InitialProfile& profile, std::size_t M) {
    profile.validate();
    if (M < 1) throw config_error("partition: need at least one vehicle");
    const double mass = profile.mass();
    const double ell = mass / static_cast<double>(M);

    RingState state;
    state.ell = ell;
    state.P = profile.P;
    state.x.resize(M);
    state.x[0] = 0.0;
    for (std::size_t i = 1; i < M; ++i) {
        const double target = ell * static_cast<double>(i);
        state.x[i] = invert_cumulative(profile, target, state.x[i - 1]);
        if (!(state.x[i] > state.x[i - 1]))
            throw config_error("partition: cumulative-mass inversion failed to advance");
    }
    state.validate();
    return state;
}

RingState equal_mass_partition_target_ell(const InitialProfile& profile,
                                          double target_ell) {
    if (!(target_ell > 0.0))
        throw config_error("partition: target vehicle length must be positive");
    const double mass = profile.mass();
    const auto M = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(mass / target_ell)));
    return equal_mass_partition(profile, M);
}

DensityField density_field(const RingState& state) {
    DensityField f;
    f.P = state.P;
    f.t = state.t;
    f.x = state.x;
    f.rho.resize(state.size());
    // shift the whole window so the first breakpoint lies in [0, P)
    const double shift = std::floor(f.x[0] / state.P) * state.P;
    if (shift != 0.0)
        for (double& xi : f.x) xi -= shift;
    for (std::size_t i = 0; i < state.size(); ++i)
        f.rho[i] = state.ell / state.gap(i);
    return f;
}

double DensityField::mass() const {
    return pairwise_sum_of(x.size(), [this](std::size_t i) {
        const double gap = i + 1 < x.size() ? x[i + 1] - x[i] : x[0] + P - x.back();
        return rho[i] * gap;
    });
}

PeriodicSeq spacing_lattice(const RingState& state) {
    return state.spacings();
}

namespace {

struct Segment {
    double lo, hi, value;  // [lo, hi) subset of [0, P)
};

// Split a possibly wrapping interval [s, s+len) into non-wrapping segments.
void push_segments(std::vector<Segment>& out, double s, double len, double v,
                   double P) {
    s = wrap_position(s, P);
    if (s + len <= P) {
        out.push_back({s, s + len, v});
    } else {
        out.push_back({s, P, v});
        out.push_back({0.0, s + len - P, v});
    }
}

std::vector<Segment> field_segments(const DensityField& f) {
    std::vector<Segment> segs;
    segs.reserve(f.x.size() + 1);
    for (std::size_t i = 0; i < f.x.size(); ++i) {
        const double gap =
            i + 1 < f.x.size() ? f.x[i + 1] - f.x[i] : f.x[0] + f.P - f.x.back();
        push_segments(segs, f.x[i], gap, f.rho[i], f.P);
    }
    std::sort(segs.begin(), segs.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    return segs;
}

std::vector<Segment> grid_segments(const UniformGrid& g) {
    std::vector<Segment> segs;
    segs.reserve(g.m);
    const double h = g.h();
    for (std::size_t j = 0; j < g.m; ++j)
        segs.push_back({j * h, j + 1 == g.m ? g.P : (j + 1) * h, g.avg[j]});
    return segs;
}

double value_at(const std::vector<Segment>& segs, double x) {
    // last segment with lo <= x
    std::size_t lo = 0, hi = segs.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (segs[mid].lo <= x ? lo : hi) = mid;
    }
    return segs[lo].value;
}

double l1_merged(const std::vector<Segment>& a, const std::vector<Segment>& b,
                 double P) {
    std::vector<double> cuts;
    cuts.reserve(a.size() + b.size() + 1);
    for (const auto& s : a) cuts.push_back(s.lo);
    for (const auto& s : b) cuts.push_back(s.lo);
    cuts.push_back(P);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> terms;
    terms.reserve(cuts.size());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (hi <= lo) continue;
        const double mid = 0.5 * (lo + hi);
        terms.push_back((hi - lo) * std::abs(value_at(a, mid) - value_at(b, mid)));
    }
    return pairwise_sum(terms);
}

}  // namespace

UniformGrid resample_to_grid(const DensityField& field, std::size_t m) {
    if (m < 1) throw config_error("resample: need at least one cell");
    UniformGrid grid;
    grid.P = field.P;
    grid.m = m;
    grid.t = field.t;
    grid.avg.assign(m, 0.0);
    const double h = grid.h();

    for (const auto& seg : field_segments(field)) {
        auto j = static_cast<std::size_t>(seg.lo / h);
        if (j >= m) j = m - 1;
        while (j > 0 && static_cast<double>(j) * h > seg.lo) --j;
        for (; j < m && static_cast<double>(j) * h < seg.hi; ++j) {
            const double lo = std::max(seg.lo, static_cast<double>(j) * h);
            const double hi = std::min(seg.hi, static_cast<double>(j + 1) * h);
            if (hi > lo) grid.avg[j] += seg.value * (hi - lo);
        }
    }
    for (double& a : grid.avg) a /= h;
    return grid;
}

double l1_distance_fields(const DensityField& a, const DensityField& b) {
    if (std::abs(a.P - b.P) > 1e-12 * std::max(a.P, b.P))
        throw config_error("l1 distance: fields live on different periods");
    return l1_merged(field_segments(a), field_segments(b), a.P);
}

double l1_distance_fields(const UniformGrid& a, const UniformGrid& b) {
    if (std::abs(a.P - b.P) > 1e-12 * std::max(a.P, b.P))
        throw config_error("l1 distance: grids live on different periods");
    return l1_merged(grid_segments(a), grid_segments(b), a.P);
}

}  // namespace ftl
