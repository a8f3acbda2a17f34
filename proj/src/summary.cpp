#include "abcmeta/summary.hpp"

#include <cmath>
#include <vector>

#include "abcmeta/errors.hpp"

namespace abcmeta {

const char* to_string(Scenario s) noexcept {
    switch (s) {
        case Scenario::S1: return "S1";
        case Scenario::S2: return "S2";
        case Scenario::S3: return "S3";
    }
    return "?";
}

SummaryStats parse_summary(std::int64_t n, std::optional<double> min,
                           std::optional<double> q1, double median,
                           std::optional<double> q3, std::optional<double> max) {
    if (n < 3)
        throw BadSampleSize("n must be at least 3, got " + std::to_string(n));

    const bool extremes = min.has_value() && max.has_value();
    const bool quartiles = q1.has_value() && q3.has_value();
    Scenario scenario;
    if (extremes && quartiles) {
        scenario = Scenario::S3;
    } else if (extremes && !q1 && !q3) {
        scenario = Scenario::S1;
    } else if (quartiles && !min && !max) {
        scenario = Scenario::S2;
    } else {
        throw UnsupportedPattern(
            "need min/median/max, q1/median/q3, or all five summaries");
    }

    for (auto v : {min, q1, std::optional<double>(median), q3, max}) {
        if (v && !std::isfinite(*v))
            throw OrderingViolation("summaries must be finite");
    }

    std::vector<double> chain;
    if (min) chain.push_back(*min);
    if (q1) chain.push_back(*q1);
    chain.push_back(median);
    if (q3) chain.push_back(*q3);
    if (max) chain.push_back(*max);

    bool degenerate = false;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (chain[i - 1] > chain[i])
            throw OrderingViolation("summaries must be non-decreasing");
        if (chain[i - 1] == chain[i]) degenerate = true;
    }

    SummaryStats s;
    s.n = n;
    s.min = min;
    s.q1 = q1;
    s.median = median;
    s.q3 = q3;
    s.max = max;
    s.scenario = scenario;
    s.degenerate = degenerate;
    return s;
}

bool required_positive(const SummaryStats& s) noexcept {
    for (auto v : {s.min, s.q1, std::optional<double>(s.median), s.q3, s.max}) {
        if (v && !(*v > 0.0)) return false;
    }
    return true;
}

}  // namespace abcmeta
