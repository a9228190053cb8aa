#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ftl {

struct WeightProfile;

// A real sequence indexed modulo its period M. Negative logical indices are
// legal; the wrap uses the mathematically nonnegative remainder so that the
// rear-coupling term and backward differences are well defined.
class PeriodicSeq {
  public:
    PeriodicSeq() = default;
    explicit PeriodicSeq(std::vector<double> values) : v_(std::move(values)) {}

    std::size_t period() const { return v_.size(); }

    double operator[](std::ptrdiff_t i) const { return v_[wrap(i)]; }
    double& raw(std::size_t i) { return v_[i]; }
    double raw(std::size_t i) const { return v_[i]; }

    std::span<const double> values() const { return v_; }
    std::vector<double>& mutable_values() { return v_; }

    std::size_t wrap(std::ptrdiff_t i) const {
        const auto m = static_cast<std::ptrdiff_t>(v_.size());
        std::ptrdiff_t r = i % m;
        if (r < 0) r += m;
        return static_cast<std::size_t>(r);
    }

  private:
    std::vector<double> v_;
};

// Forward difference: result[i] = a[i+1] - a[i]. One period sums to zero.
PeriodicSeq delta_plus(const PeriodicSeq& a);

// Backward difference: result[i] = a[i] - a[i-1].
PeriodicSeq delta_minus(const PeriodicSeq& a);

// Anticipation average over the look-ahead stencil:
// result[i] = sum_j c_j a[i+j]. Commutes with delta_plus/delta_minus.
PeriodicSeq weighted_mean(const PeriodicSeq& a, const WeightProfile& w);

// Total variation over one period, wrap jump included:
// sum_i |a[i] - a[i-1]|. Zero iff the sequence is constant.
double tv_periodic(const PeriodicSeq& a);

// sum_i weights[i] * |a[i] - b[i]|. Throws config_error on length mismatch
// or a negative weight.
double l1_weighted(const PeriodicSeq& a, const PeriodicSeq& b,
                   std::span<const double> weights);

}  // namespace ftl
