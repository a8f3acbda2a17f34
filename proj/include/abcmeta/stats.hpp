#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace abcmeta {

struct FiveNumber {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

struct Moments {
    double mean = 0.0;
    double sd = 0.0;
};

// Quantile with linear interpolation between order statistics (the common
// h = (n-1)p + 1 definition). Input must be sorted ascending.
double quantile_sorted(std::span<const double> sorted, double p);

FiveNumber summary_of_sorted(std::span<const double> sorted);

// Convenience: copies, sorts, then summarizes.
FiveNumber summary_of(std::span<const double> sample);

// Mean and sample standard deviation (n-1 denominator). sd needs n >= 2.
Moments moments_of(std::span<const double> sample);

}  // namespace abcmeta
