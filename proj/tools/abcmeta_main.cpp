#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "abcmeta/batch.hpp"
#include "abcmeta/engine.hpp"
#include "abcmeta/errors.hpp"
#include "abcmeta/progress.hpp"
#include "abcmeta/rescale.hpp"
#include "abcmeta/version.hpp"

namespace {

using namespace abcmeta;

// An option whose absence is meaningful. bind() must be called on the
// object's final storage: CLI11 keeps a reference to `value`.
struct Presence {
    CLI::Option* opt = nullptr;
    double value = 0.0;

    void bind(CLI::App* cmd, const std::string& name,
              const std::string& desc) {
        opt = cmd->add_option(name, value, desc);
    }

    std::optional<double> get() const {
        if (opt && opt->count() > 0) return value;
        return std::nullopt;
    }
};

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t value) {
    if (seed_opt->count() > 0) return value;
    if (const char* env = std::getenv("ABCMETA_SEED")) {
        errno = 0;
        char* end = nullptr;
        if (*env == '-' || *env == '\0')
            throw BadConfig(std::string("ABCMETA_SEED must be an unsigned "
                                        "integer, got '") +
                            env + "'");
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || errno == ERANGE)
            throw BadConfig(std::string("ABCMETA_SEED must be an unsigned "
                                        "integer, got '") +
                            env + "'");
        return v;
    }
    return 1234;
}

// c = -lowest + one decade of the data spread; only meaningful when some
// summary is non-positive.
double auto_shift_constant(const SummaryStats& stats) {
    if (required_positive(stats)) return 0.0;
    double lo = stats.median, hi = stats.median;
    for (auto v : {stats.min, stats.q1, stats.q3, stats.max}) {
        if (v) {
            lo = std::min(lo, *v);
            hi = std::max(hi, *v);
        }
    }
    const double range = hi - lo;
    const double unit =
        range > 0.0 ? std::pow(10.0, std::floor(std::log10(range))) : 1.0;
    return -lo + unit;
}

void print_human(std::ostream& os, const ReportRow& row) {
    const auto line = [&os](const char* name, const std::string& value) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-22s", name);
        os << buf << value << '\n';
    };
    const auto f3 = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        return std::string(buf);
    };
    if (row.scenario) line("scenario", to_string(*row.scenario));
    if (row.family) line("family", to_string(*row.family));
    if (row.result) {
        line("est_mean", f3(row.result->est_mean));
        line("est_sd", f3(row.result->est_sd));
        if (row.result->selection_probability)
            line("selection_probability",
                 f3(*row.result->selection_probability));
        line("retained", std::to_string(row.result->retained));
    }
    if (row.shift) line("shift", format_g6(*row.shift));
    line("n_simul", std::to_string(row.n_simul));
    line("seed", std::to_string(row.seed));
}

struct CommonFlags {
    AbcConfig cfg;
    CLI::Option* seed_opt = nullptr;
    Presence sigma_max, lambda_max, shape_max, scale_max, alpha_max, beta_max,
        lower, upper;
    bool json = false;
    bool quiet = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--iters", cfg.n_simul, "simulation draws per run")
            ->capture_default_str();
        cmd->add_option("--accept-pct", cfg.acceptance_pct,
                        "acceptance percentage")
            ->capture_default_str();
        seed_opt = cmd->add_option("--seed", cfg.seed,
                                   "RNG seed (default 1234, or ABCMETA_SEED)");
        cmd->add_option("--chunk-size", cfg.chunk_size,
                        "iterations per work chunk")
            ->capture_default_str();
        cmd->add_option("--threads", cfg.threads,
                        "worker threads (0 = all cores)")
            ->capture_default_str();
        sigma_max.bind(cmd, "--sigma-max",
                       "sigma prior upper bound (normal/lognormal; in "
                       "selection mode, the normal arm)");
        lambda_max.bind(cmd, "--lambda-max",
                        "exponential mean prior upper bound");
        shape_max.bind(cmd, "--shape-max", "weibull shape prior upper bound");
        scale_max.bind(cmd, "--scale-max", "weibull scale prior upper bound");
        alpha_max.bind(cmd, "--alpha-max", "beta alpha prior upper bound");
        beta_max.bind(cmd, "--beta-max", "beta beta prior upper bound");
        lower.bind(cmd, "--lower", "beta support lower bound");
        upper.bind(cmd, "--upper", "beta support upper bound");
        cmd->add_flag("--json", json, "machine-readable output");
        cmd->add_flag("--quiet", quiet, "suppress progress and notes");
    }

    PriorOverrides priors() const {
        PriorOverrides p;
        p.sigma_max = sigma_max.get();
        p.lambda_max = lambda_max.get();
        p.shape_max = shape_max.get();
        p.scale_max = scale_max.get();
        p.alpha_max = alpha_max.get();
        p.beta_max = beta_max.get();
        p.lower = lower.get();
        p.upper = upper.get();
        return p;
    }
};

int run_estimate_cmd(CommonFlags& common, std::int64_t n, const Presence& min,
                     const Presence& q1, double median, const Presence& q3,
                     const Presence& max, const std::string& dist,
                     const Presence& shift_flag, bool auto_shift) {
    common.cfg.seed = resolve_seed(common.seed_opt, common.cfg.seed);
    SummaryStats stats =
        parse_summary(n, min.get(), q1.get(), median, q3.get(), max.get());
    if (stats.degenerate && !common.quiet)
        std::cerr << "note: some adjacent summary statistics are equal; the "
                     "scale is weakly identified\n";

    const bool select = dist == "select";
    const Family family =
        select ? Family::Normal : *family_from_string(dist);

    double shift = shift_flag.get().value_or(0.0);
    if (!shift_flag.get() && auto_shift) {
        shift = auto_shift_constant(stats);
        if (shift != 0.0)
            std::cerr << "auto-shift: adding c = " << format_g6(shift)
                      << " to all summaries; the reported mean is shifted "
                         "back to the original scale\n";
    }
    if (shift != 0.0)
        stats = (select || family == Family::Lognormal)
                    ? apply_shift(stats, shift)
                    : shift_stats(stats, shift);

    ProgressBar bar(std::cerr, !common.quiet && isatty(fileno(stderr)) != 0);
    RunHooks hooks;
    hooks.progress = [&bar](double f, std::uint64_t it) { bar.update(f, it); };

    AbcResult res = select
                        ? run_selection(stats, common.cfg,
                                        common.priors().selection(), hooks)
                        : run_abc(stats, common.priors().build(family),
                                  common.cfg, hooks);
    bar.finish();
    if (shift != 0.0) res = unshift_result(res, shift);

    ReportRow row;
    row.scenario = stats.scenario;
    row.family = res.family;
    row.result = res;
    if (shift != 0.0) row.shift = shift;
    row.n_simul = common.cfg.n_simul;
    row.seed = common.cfg.seed;
    if (common.json)
        std::cout << report_row_json(row) << '\n';
    else
        print_human(std::cout, row);
    return 0;
}

int run_batch_cmd(CommonFlags& common, const std::string& input,
                  const std::string& output, const std::string& dist,
                  bool fail_fast) {
    common.cfg.seed = resolve_seed(common.seed_opt, common.cfg.seed);
    const BatchFile batch = load_batch(input);

    BatchOptions opts;
    opts.cfg = common.cfg;
    opts.default_select = dist == "select";
    opts.default_family =
        opts.default_select ? Family::Normal : *family_from_string(dist);
    opts.priors = common.priors();
    opts.fail_fast = fail_fast;

    ProgressBar bar(std::cerr, !common.quiet && isatty(fileno(stderr)) != 0);
    std::size_t current = static_cast<std::size_t>(-1);
    const auto started = std::chrono::steady_clock::now();
    const RunReport report = run_batch(
        batch, opts,
        [&](std::size_t idx, const StudyRecord& rec, double f,
            std::uint64_t it) {
            if (idx != current) {
                bar.set_label(rec.study_id);
                current = idx;
            }
            bar.update(f, it);
        });
    bar.finish();

    const bool as_json =
        common.json || (output.size() >= 5 &&
                        output.substr(output.size() - 5) == ".json");
    std::ofstream out(output);
    if (!out) throw Error("IoError", "cannot write '" + output + "'");
    if (as_json)
        write_report_json(out, report);
    else
        write_report_csv(out, report);
    out.close();
    if (!out) throw Error("IoError", "failed writing '" + output + "'");

    if (!common.quiet) {
        std::size_t failed = 0;
        for (const auto& row : report)
            if (!row.error.empty()) ++failed;
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - started)
                                .count();
        char timing[40];
        std::snprintf(timing, sizeof(timing), "%.1f", secs);
        std::cerr << report.size() << " studies -> " << output;
        if (failed > 0) std::cerr << " (" << failed << " with errors)";
        std::cerr << " in " << timing << " s\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "abcmeta: estimate a study's mean and SD from reported summary "
        "statistics (min/quartiles/median/max) by simulation"};
    app.set_version_flag("--version", std::string("abcmeta ") + kVersion);
    app.require_subcommand(1);

    const std::vector<std::string> families = {
        "normal", "lognormal", "exponential", "weibull", "beta", "select"};

    // estimate
    auto* est = app.add_subcommand(
        "estimate", "estimate one study from command-line flags");
    CommonFlags est_common;
    std::int64_t n = 0;
    double median = 0.0;
    std::string est_dist;
    bool auto_shift = false;
    est->add_option("--n", n, "study sample size")->required();
    Presence min_f, q1_f, q3_f, max_f, shift_f;
    min_f.bind(est, "--min", "reported minimum");
    q1_f.bind(est, "--q1", "reported first quartile");
    est->add_option("--median", median, "reported median")->required();
    q3_f.bind(est, "--q3", "reported third quartile");
    max_f.bind(est, "--max", "reported maximum");
    est->add_option("--dist", est_dist,
                    "distribution family, or 'select' to choose among "
                    "normal/lognormal/exponential/weibull")
        ->required()
        ->check(CLI::IsMember(families));
    shift_f.bind(
        est, "--shift",
        "add c to all summaries before fitting, subtract from the mean after");
    est->add_flag("--auto-shift", auto_shift,
                  "pick the shift constant automatically when summaries are "
                  "not all positive");
    est_common.add_to(est);

    // batch
    auto* bat = app.add_subcommand("batch",
                                   "run every study in a table (CSV or JSON)");
    CommonFlags bat_common;
    std::string input, output, bat_dist = "normal";
    bool fail_fast = false;
    bat->add_option("input", input, "input table path")
        ->required()
        ->check(CLI::ExistingFile);
    bat->add_option("output", output, "report path (.json for JSON)")
        ->required();
    bat->add_option("--dist", bat_dist, "default family for rows without one")
        ->capture_default_str()
        ->check(CLI::IsMember(families));
    bat->add_flag("--fail-fast", fail_fast,
                  "abort on the first failing study");
    bat_common.add_to(bat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (est->parsed())
            return run_estimate_cmd(est_common, n, min_f, q1_f, median, q3_f,
                                    max_f, est_dist, shift_f, auto_shift);
        return run_batch_cmd(bat_common, input, output, bat_dist, fail_fast);
    } catch (const abcmeta::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
