#include "abcmeta/stats.hpp"

#include <algorithm>
#include <cmath>

#include "abcmeta/errors.hpp"

namespace abcmeta {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw EmptySample("quantile of empty sample");
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidParam("quantile probability must be in [0, 1]");
    const std::size_t n = sorted.size();
    const double h = static_cast<double>(n - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double x_lo = sorted[lo];
    const double x_hi = sorted[hi];
    const double g = h - static_cast<double>(lo);
    // Whole and equal-neighbour positions short-circuit before any
    // arithmetic: 0 * inf and inf - inf would both poison the result.
    if (g == 0.0 || x_lo == x_hi) return x_lo;
    return x_lo + g * (x_hi - x_lo);
}

FiveNumber summary_of_sorted(std::span<const double> sorted) {
    if (sorted.empty()) throw EmptySample("summary of empty sample");
    FiveNumber f;
    f.min = sorted.front();
    f.q1 = quantile_sorted(sorted, 0.25);
    f.median = quantile_sorted(sorted, 0.5);
    f.q3 = quantile_sorted(sorted, 0.75);
    f.max = sorted.back();
    return f;
}

FiveNumber summary_of(std::span<const double> sample) {
    std::vector<double> copy(sample.begin(), sample.end());
    std::sort(copy.begin(), copy.end());
    return summary_of_sorted(copy);
}

Moments moments_of(std::span<const double> sample) {
    if (sample.empty()) throw EmptySample("moments of empty sample");
    if (sample.size() < 2) throw TooFewPoints("sd needs at least 2 points");
    const double n = static_cast<double>(sample.size());
    double sum = 0.0;
    for (double x : sample) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : sample) {
        const double d = x - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace abcmeta
