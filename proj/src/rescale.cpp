#include "abcmeta/rescale.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "abcmeta/errors.hpp"

namespace abcmeta {

void BoundsTransform::validate() const {
    if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper))
        throw InvalidParam("bounds need lower < upper and finite");
}

namespace {

// Rebuilds the degenerate flag after a monotone map; rounding can collapse
// previously distinct neighbours.
void refresh_degenerate(SummaryStats& s) {
    std::vector<double> chain;
    if (s.min) chain.push_back(*s.min);
    if (s.q1) chain.push_back(*s.q1);
    chain.push_back(s.median);
    if (s.q3) chain.push_back(*s.q3);
    if (s.max) chain.push_back(*s.max);
    s.degenerate = false;
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (chain[i - 1] == chain[i]) s.degenerate = true;
}

template <typename F>
SummaryStats map_present(const SummaryStats& stats, F&& f) {
    SummaryStats out = stats;
    if (out.min) out.min = f(*out.min);
    if (out.q1) out.q1 = f(*out.q1);
    out.median = f(out.median);
    if (out.q3) out.q3 = f(*out.q3);
    if (out.max) out.max = f(*out.max);
    refresh_degenerate(out);
    return out;
}

}  // namespace

SummaryStats to_unit(const SummaryStats& stats, const BoundsTransform& t) {
    t.validate();
    const double width = t.upper - t.lower;
    return map_present(stats, [&](double x) {
        if (!(x >= t.lower && x <= t.upper))
            throw OutOfBounds("summary value " + std::to_string(x) +
                              " outside [" + std::to_string(t.lower) + ", " +
                              std::to_string(t.upper) + "]");
        return (x - t.lower) / width;
    });
}

std::pair<double, double> from_unit_moments(double mean_u, double sd_u,
                                            const BoundsTransform& t) {
    t.validate();
    const double width = t.upper - t.lower;
    return {width * mean_u + t.lower, width * sd_u};
}

SummaryStats shift_stats(const SummaryStats& stats, double c) {
    if (!std::isfinite(c)) throw InvalidParam("shift must be finite");
    return map_present(stats, [&](double x) { return x + c; });
}

SummaryStats apply_shift(const SummaryStats& stats, double c) {
    SummaryStats out = shift_stats(stats, c);
    for (auto v : {out.min, out.q1, std::optional<double>(out.median), out.q3,
                   out.max}) {
        if (v && !(*v > 0.0))
            throw ShiftInsufficient("value " + std::to_string(*v - c) +
                                    " + " + std::to_string(c) +
                                    " is not strictly positive");
    }
    return out;
}

AbcResult unshift_result(AbcResult result, double c) {
    result.est_mean -= c;
    return result;
}

}  // namespace abcmeta
