#pragma once

#include <cstddef>
#include <span>

namespace ftl {

// Pairwise (cascade) summation. Rounding error grows like log(n) instead of
// n, which keeps the exact-identity checks (telescoping sums, mass balances)
// meaningful for long sequences. Deterministic regardless of thread count:
// reductions are never parallelized.
inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace detail {
template <typename F>
double pairwise_sum_range(F& term, std::size_t begin, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += term(begin + i);
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_range(term, begin, half) +
           pairwise_sum_range(term, begin + half, n - half);
}
}  // namespace detail

template <typename F>
double pairwise_sum_of(std::size_t n, F&& term) {
    return detail::pairwise_sum_range(term, 0, n);
}

}  // namespace ftl
