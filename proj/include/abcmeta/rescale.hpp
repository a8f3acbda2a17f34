#pragma once

#include <utility>

#include "abcmeta/engine.hpp"
#include "abcmeta/summary.hpp"

namespace abcmeta {

// Affine map between a bounded support [lower, upper] and the unit interval.
struct BoundsTransform {
    double lower = 0.0;
    double upper = 1.0;

    void validate() const;  // throws InvalidParam unless lower < upper
};

// (x - L) / (U - L) applied to every present summary; throws OutOfBounds if
// any present value falls outside [L, U].
SummaryStats to_unit(const SummaryStats& stats, const BoundsTransform& t);

// mean = (U - L) * mean_u + L; sd = (U - L) * sd_u.
std::pair<double, double> from_unit_moments(double mean_u, double sd_u,
                                            const BoundsTransform& t);

// Plain translation: adds c to every present summary. Ordering and scenario
// are unchanged; never throws for finite c.
SummaryStats shift_stats(const SummaryStats& stats, double c);

// The positive-shift trick: shift_stats plus the guarantee that every
// shifted value is strictly positive. Throws ShiftInsufficient otherwise.
SummaryStats apply_shift(const SummaryStats& stats, double c);

// Undoes apply_shift on the location estimate: est_mean - c. The sd and
// everything else are untouched.
AbcResult unshift_result(AbcResult result, double c);

}  // namespace abcmeta
