#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace abcmeta {

// Which reported summaries are available for a study.
//   S1: min, median, max
//   S2: q1, median, q3
//   S3: all five
enum class Scenario { S1, S2, S3 };

const char* to_string(Scenario s) noexcept;

struct SummaryStats {
    std::int64_t n = 0;
    std::optional<double> min;
    std::optional<double> q1;
    double median = 0.0;
    std::optional<double> q3;
    std::optional<double> max;
    Scenario scenario = Scenario::S1;
    // Any two present summaries equal. Legal, but flagged so front ends can
    // warn that the match may be poor.
    bool degenerate = false;
};

// Validates and classifies a set of reported summaries. Throws
// BadSampleSize, UnsupportedPattern, or OrderingViolation.
SummaryStats parse_summary(std::int64_t n, std::optional<double> min,
                           std::optional<double> q1, double median,
                           std::optional<double> q3, std::optional<double> max);

// True when every present summary is strictly positive.
bool required_positive(const SummaryStats& s) noexcept;

}  // namespace abcmeta
