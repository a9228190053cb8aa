#pragma once

#include <random>
#include <vector>

#include "ftl/eulerian.hpp"
#include "ftl/ring_state.hpp"
#include "ftl/velocity.hpp"

namespace ftl::testutil {

// Random valid anticipation weights: non-increasing, summing to one, with
// the mandatory trailing zero.
inline WeightProfile random_weights(std::mt19937_64& rng, int max_n = 6,
                                    double max_kappa = 1.0) {
    std::uniform_int_distribution<int> pick_n(1, max_n);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    const int n = pick_n(rng);
    std::vector<double> g(static_cast<std::size_t>(n));
    for (auto& gi : g) gi = unit(rng);
    std::sort(g.begin(), g.end(), std::greater<>());
    double sum = 0.0;
    for (double gi : g) sum += gi;
    WeightProfile w;
    w.N = n;
    w.c.resize(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 0; j < n; ++j) w.c[static_cast<std::size_t>(j)] = g[static_cast<std::size_t>(j)] / sum;
    w.kappa = std::uniform_real_distribution<double>(0.0, max_kappa)(rng);
    w.validate();
    return w;
}

// Random collision-free ring: spacings in [y_lo, y_hi], period derived.
inline RingState random_ring(std::mt19937_64& rng, std::size_t m_lo = 8,
                             std::size_t m_hi = 24, double y_lo = 1.05,
                             double y_hi = 3.0) {
    std::uniform_int_distribution<std::size_t> pick_m(m_lo, m_hi);
    std::uniform_real_distribution<double> pick_ell(0.02, 0.08);
    std::uniform_real_distribution<double> pick_y(y_lo, y_hi);
    const std::size_t M = pick_m(rng);
    RingState s;
    s.ell = pick_ell(rng);
    s.x.resize(M);
    s.x[0] = 0.0;
    double total = 0.0;
    std::vector<double> gaps(M);
    for (auto& g : gaps) {
        g = s.ell * pick_y(rng);
        total += g;
    }
    for (std::size_t i = 1; i < M; ++i) s.x[i] = s.x[i - 1] + gaps[i - 1];
    s.P = total;
    s.validate();
    return s;
}

// Random piecewise-constant profile bounded away from vacuum and jam.
inline InitialProfile random_profile(std::mt19937_64& rng, double P = 4.0) {
    std::uniform_int_distribution<int> pick_k(2, 6);
    std::uniform_real_distribution<double> pick_val(0.15, 0.95);
    std::uniform_real_distribution<double> pick_x(0.05, 0.95);
    const int k = pick_k(rng);
    std::vector<double> breaks{0.0};
    for (int i = 1; i < k; ++i) breaks.push_back(P * pick_x(rng));
    std::sort(breaks.begin(), breaks.end());
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (breaks[i] - breaks[i - 1] < 1e-3) breaks[i] = breaks[i - 1] + 1e-3;
    std::vector<double> vals;
    double lo = 1.0;
    for (int i = 0; i < k; ++i) {
        vals.push_back(pick_val(rng));
        lo = std::min(lo, vals.back());
    }
    return piecewise_profile(breaks, vals, P, lo);
}

}  // namespace ftl::testutil
