#include "ftl/periodic_seq.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "ftl/errors.hpp"
#include "ftl/summation.hpp"
#include "ftl/velocity.hpp"

namespace ftl {

PeriodicSeq delta_plus(const PeriodicSeq& a) {
    const std::size_t m = a.period();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = a.raw(i + 1 == m ? 0 : i + 1) - a.raw(i);
    return PeriodicSeq(std::move(out));
}

PeriodicSeq delta_minus(const PeriodicSeq& a) {
    const std::size_t m = a.period();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = a.raw(i) - a.raw(i == 0 ? m - 1 : i - 1);
    return PeriodicSeq(std::move(out));
}

PeriodicSeq weighted_mean(const PeriodicSeq& a, const WeightProfile& w) {
    w.validate();
    const std::size_t m = a.period();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j <= w.N; ++j)
            s += w.c[static_cast<std::size_t>(j)] *
                 a[static_cast<std::ptrdiff_t>(i) + j];
        out[i] = s;
    }
    return PeriodicSeq(std::move(out));
}

double tv_periodic(const PeriodicSeq& a) {
    const std::size_t m = a.period();
    return pairwise_sum_of(m, [&a, m](std::size_t i) {
        return std::abs(a.raw(i) - a.raw(i == 0 ? m - 1 : i - 1));
    });
}

double l1_weighted(const PeriodicSeq& a, const PeriodicSeq& b,
                   std::span<const double> weights) {
    if (a.period() != b.period() || a.period() != weights.size())
        throw config_error("l1_weighted: sequences and weights must share one length");
    for (double wgt : weights)
        if (wgt < 0.0) throw config_error("l1_weighted: cell measures must be nonnegative");
    return pairwise_sum_of(a.period(), [&](std::size_t i) {
        return weights[i] * std::abs(a.raw(i) - b.raw(i));
    });
}

}  // namespace ftl
