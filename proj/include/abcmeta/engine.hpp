#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "abcmeta/distributions.hpp"
#include "abcmeta/stats.hpp"
#include "abcmeta/summary.hpp"

namespace abcmeta {

struct AbcConfig {
    std::uint64_t n_simul = 50000;
    double acceptance_pct = 0.1;
    std::uint64_t seed = 1234;
    std::uint64_t chunk_size = 500;  // execution hint; never affects results
    unsigned threads = 0;            // 0 = hardware concurrency

    void validate() const;  // throws BadConfig
};

// K = round(n_simul * acceptance_pct / 100), at least 1.
std::uint64_t retained_count(const AbcConfig& cfg);

struct Candidate {
    double distance = 0.0;
    std::uint64_t index = 0;  // simulation iteration number within the arm
    double pseudo_mean = 0.0;
    double pseudo_sd = 0.0;
    Family family = Family::Normal;
};

struct AbcResult {
    double est_mean = 0.0;
    double est_sd = 0.0;
    std::uint64_t retained = 0;
    Family family = Family::Normal;
    std::optional<double> selection_probability;  // selection mode only
};

struct RunHooks {
    // fraction in [0, 1], then total iterations finished; called after each
    // chunk, with strictly increasing iteration counts.
    std::function<void(double, std::uint64_t)> progress;
    // polled at chunk boundaries; returning true aborts with Cancelled
    std::function<bool()> cancel;
};

// Euclidean norm over the components present in obs's scenario.
double distance(const SummaryStats& obs, const FiveNumber& sim);

// The k smallest by (distance, index), ascending. Streaming accumulator; the
// merge of two selectors sees exactly the union of what they saw.
class TopKSelector {
public:
    explicit TopKSelector(std::uint64_t k);
    void push(const Candidate& c);
    void merge(const TopKSelector& other);
    std::uint64_t seen() const noexcept { return seen_; }
    // Ascending order; throws InsufficientCandidates if fewer than k pushed.
    std::vector<Candidate> take_sorted();

private:
    std::uint64_t k_;
    std::uint64_t seen_ = 0;
    std::vector<Candidate> heap_;  // max-heap on (distance, index)
};

std::vector<Candidate> top_k(std::span<const Candidate> candidates,
                             std::uint64_t k);

struct AbcDetail {
    AbcResult result;
    // run_abc: the arm's K retained candidates, ascending.
    // run_selection: the pooled top K across arms, ascending by
    // (distance, family, index).
    std::vector<Candidate> retained;
};

AbcResult run_abc(const SummaryStats& stats, const DistributionSpec& spec,
                  const AbcConfig& cfg, const RunHooks& hooks = {});
AbcDetail run_abc_detailed(const SummaryStats& stats,
                           const DistributionSpec& spec, const AbcConfig& cfg,
                           const RunHooks& hooks = {});

// Per-arm prior overrides for selection mode; defaults are the standard
// priors (normal sigma 50, lognormal sigma 10, lambda 40, weibull 50/50).
struct SelectionLimits {
    double normal_sigma_max = 50.0;
    double lognormal_sigma_max = 10.0;
    double lambda_max = 40.0;
    double weibull_shape_max = 50.0;
    double weibull_scale_max = 50.0;
};

AbcResult run_selection(const SummaryStats& stats, const AbcConfig& cfg,
                        const SelectionLimits& limits = {},
                        const RunHooks& hooks = {});
AbcDetail run_selection_detailed(const SummaryStats& stats,
                                 const AbcConfig& cfg,
                                 const SelectionLimits& limits = {},
                                 const RunHooks& hooks = {});

}  // namespace abcmeta
