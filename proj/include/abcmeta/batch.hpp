#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abcmeta/engine.hpp"
#include "abcmeta/summary.hpp"

namespace abcmeta {

// One row of a batch input file, as parsed. Summary values are validated at
// run time, so a bad row (say n = 2) poisons only its own report row, not
// the whole file; structural problems (unreadable numbers, duplicate ids,
// unknown columns) reject the file at parse time.
struct StudyRecord {
    std::string study_id;
    std::int64_t n = 0;
    std::optional<double> min;
    std::optional<double> q1;
    std::optional<double> median;
    std::optional<double> q3;
    std::optional<double> max;
    std::optional<Family> family;  // absent = batch default
    bool select = false;           // distribution column said "select"
    std::optional<double> shift;
};

using BatchFile = std::vector<StudyRecord>;

// CSV: header mandatory; columns from {study_id, n, min, q1, median, q3,
// max, distribution, shift}; empty cell = absent; double quotes supported.
BatchFile parse_batch_csv(std::istream& in);

// JSON: array of objects with the same field names; null or omitted =
// absent.
BatchFile parse_batch_json(std::istream& in);

// Dispatches on extension: .json means JSON, anything else CSV.
BatchFile load_batch(const std::string& path);

// Optional prior-limit overrides layered over each family's defaults.
struct PriorOverrides {
    std::optional<double> sigma_max;
    std::optional<double> lambda_max;
    std::optional<double> shape_max;
    std::optional<double> scale_max;
    std::optional<double> alpha_max;
    std::optional<double> beta_max;
    std::optional<double> lower;
    std::optional<double> upper;

    DistributionSpec build(Family family) const;
    // sigma_max here applies to the normal arm only; the lognormal arm
    // keeps its own default.
    SelectionLimits selection() const;
};

struct BatchOptions {
    AbcConfig cfg;  // cfg.seed is the global seed
    Family default_family = Family::Normal;
    bool default_select = false;
    PriorOverrides priors;
    bool fail_fast = false;
};

struct ReportRow {
    std::string study_id;
    std::optional<Scenario> scenario;
    std::optional<Family> family;
    std::optional<AbcResult> result;
    std::optional<double> shift;
    std::string error;  // empty = success
    std::uint64_t seed = 0;
    std::uint64_t n_simul = 0;
    double wall_ms = 0.0;  // informational; never serialized
};

using RunReport = std::vector<ReportRow>;

std::uint64_t derive_study_seed(std::uint64_t global_seed,
                                std::string_view study_id);

using StudyProgress =
    std::function<void(std::size_t index, const StudyRecord& record,
                       double fraction, std::uint64_t iters_done)>;

// Runs rows in input order; each study's seed is
// derive_study_seed(cfg.seed, study_id). Row-level failures land in
// ReportRow::error unless opts.fail_fast, which rethrows.
RunReport run_batch(const BatchFile& batch, const BatchOptions& opts,
                    const StudyProgress& progress = {});

// %.6g, locale-independent.
std::string format_g6(double v);

void write_report_csv(std::ostream& os, const RunReport& report);
void write_report_json(std::ostream& os, const RunReport& report);
// Single row as a JSON object (used by both the array writer and the
// single-study command).
std::string report_row_json(const ReportRow& row, int indent = 0);

}  // namespace abcmeta
