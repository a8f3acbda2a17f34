#include "abcmeta/engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "abcmeta/errors.hpp"
#include "abcmeta/rescale.hpp"

namespace abcmeta {

void AbcConfig::validate() const {
    if (n_simul < 1) throw BadConfig("n_simul must be at least 1");
    if (!(acceptance_pct > 0.0) || !(acceptance_pct <= 100.0) ||
        !std::isfinite(acceptance_pct))
        throw BadConfig("acceptance_pct must lie in (0, 100]");
    if (chunk_size < 1) throw BadConfig("chunk_size must be at least 1");
}

std::uint64_t retained_count(const AbcConfig& cfg) {
    cfg.validate();
    const double exact =
        static_cast<double>(cfg.n_simul) * cfg.acceptance_pct / 100.0;
    auto k = static_cast<std::uint64_t>(std::llround(exact));
    if (k < 1) k = 1;
    if (k > cfg.n_simul) k = cfg.n_simul;
    return k;
}

double distance(const SummaryStats& obs, const FiveNumber& sim) {
    // Component order is fixed (min, q1, median, q3, max); the sum is part
    // of the reproducibility contract.
    double ss = 0.0;
    const auto add = [&ss](double o, double s) {
        const double d = o - s;
        ss += d * d;
    };
    if (obs.min) add(*obs.min, sim.min);
    if (obs.q1) add(*obs.q1, sim.q1);
    add(obs.median, sim.median);
    if (obs.q3) add(*obs.q3, sim.q3);
    if (obs.max) add(*obs.max, sim.max);
    return std::sqrt(ss);
}

namespace {

// Strict total order; index is unique within an arm, so there are no ties.
bool candidate_less(const Candidate& a, const Candidate& b) noexcept {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.index < b.index;
}

// Pooled order across arms: global concatenation order (arm-major).
bool pooled_less(const Candidate& a, const Candidate& b) noexcept {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.family != b.family) return a.family < b.family;
    return a.index < b.index;
}

}  // namespace

TopKSelector::TopKSelector(std::uint64_t k) : k_(k) {
    if (k < 1) throw InvalidParam("top-k needs k >= 1");
    heap_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(k, 1 << 20)));
}

void TopKSelector::push(const Candidate& c) {
    ++seen_;
    if (heap_.size() < k_) {
        heap_.push_back(c);
        std::push_heap(heap_.begin(), heap_.end(), candidate_less);
        return;
    }
    if (candidate_less(c, heap_.front())) {
        std::pop_heap(heap_.begin(), heap_.end(), candidate_less);
        heap_.back() = c;
        std::push_heap(heap_.begin(), heap_.end(), candidate_less);
    }
}

void TopKSelector::merge(const TopKSelector& other) {
    seen_ += other.seen_ - other.heap_.size();  // push() re-counts the rest
    for (const Candidate& c : other.heap_) push(c);
}

std::vector<Candidate> TopKSelector::take_sorted() {
    if (heap_.size() < k_)
        throw InsufficientCandidates("need " + std::to_string(k_) +
                                     " candidates, saw " +
                                     std::to_string(heap_.size()));
    std::sort(heap_.begin(), heap_.end(), candidate_less);
    return std::move(heap_);
}

std::vector<Candidate> top_k(std::span<const Candidate> candidates,
                             std::uint64_t k) {
    TopKSelector sel(k);
    for (const Candidate& c : candidates) sel.push(c);
    return sel.take_sorted();
}

namespace {

// Everything an arm needs at simulation time, precomputed. The Normal arm
// works in coordinates centered at the location-prior lower bound: the
// observed summaries are translated by -lo and the location draw is
// width * u. Distances and retention are then invariant under a common
// translation of the inputs, and the single final addition of mean_offset
// makes est_mean shift along exactly.
struct ArmPlan {
    Family family = Family::Normal;
    SummaryStats obs;        // centered (Normal) or unit-scale (Beta)
    std::int64_t n = 0;
    double loc_lo = 0.0;     // lognormal: log of lower location bound
    double loc_width = 0.0;  // normal/lognormal location prior width
    double scale1_max = 0.0; // sigma / lambda / shape / alpha
    double scale2_max = 0.0; // weibull scale / beta beta
    double mean_offset = 0.0;
    bool unit_scale = false;
    BoundsTransform bounds;
};

double positive_uniform(double max, RngStream& rng) {
    double v;
    do {
        v = max * rng.uniform01();
    } while (v == 0.0);
    return v;
}

ArmPlan make_plan(const SummaryStats& stats, const DistributionSpec& spec) {
    spec.validate();
    ArmPlan plan;
    plan.family = spec.family;
    plan.n = stats.n;
    switch (spec.family) {
        case Family::Normal: {
            const auto [lo, hi] = location_prior_bounds(stats);
            plan.obs = shift_stats(stats, -lo);
            plan.loc_width = hi - lo;
            plan.scale1_max = spec.sigma_max;
            plan.mean_offset = lo;
            break;
        }
        case Family::Lognormal: {
            if (!required_positive(stats))
                throw NonPositiveSupport(
                    "lognormal needs strictly positive summaries; consider "
                    "the positive-shift trick");
            const auto [lo, hi] = location_prior_bounds(stats);
            plan.obs = stats;
            plan.loc_lo = std::log(lo);
            plan.loc_width = std::log(hi) - plan.loc_lo;
            plan.scale1_max = spec.sigma_max;
            break;
        }
        case Family::Exponential:
            plan.obs = stats;
            plan.scale1_max = spec.lambda_max;
            break;
        case Family::Weibull:
            plan.obs = stats;
            plan.scale1_max = spec.shape_max;
            plan.scale2_max = spec.scale_max;
            break;
        case Family::Beta:
            plan.bounds = BoundsTransform{spec.lower, spec.upper};
            plan.obs = to_unit(stats, plan.bounds);
            plan.scale1_max = spec.alpha_max;
            plan.scale2_max = spec.beta_max;
            plan.unit_scale = true;
            break;
    }
    return plan;
}

ParamDraw draw_plan_params(const ArmPlan& plan, RngStream& rng) {
    switch (plan.family) {
        case Family::Normal: {
            const double mu_c = plan.loc_width * rng.uniform01();
            return NormalParams{mu_c, positive_uniform(plan.scale1_max, rng)};
        }
        case Family::Lognormal: {
            const double mu = plan.loc_lo + plan.loc_width * rng.uniform01();
            return LognormalParams{mu,
                                   positive_uniform(plan.scale1_max, rng)};
        }
        case Family::Exponential:
            return ExponentialParams{positive_uniform(plan.scale1_max, rng)};
        case Family::Weibull: {
            const double shape = positive_uniform(plan.scale1_max, rng);
            const double scale = positive_uniform(plan.scale2_max, rng);
            return WeibullParams{shape, scale};
        }
        case Family::Beta: {
            const double a = positive_uniform(plan.scale1_max, rng);
            const double b = positive_uniform(plan.scale2_max, rng);
            return BetaParams{a, b};
        }
    }
    throw InvalidParam("unknown family");
}

Candidate simulate_one(const ArmPlan& plan, std::uint64_t iter,
                       RngStream& rng, std::vector<double>& buf) {
    const ParamDraw draw = draw_plan_params(plan, rng);
    sample_pseudo(plan.family, draw, plan.n, rng, buf);
    // Moments over generation order, quantiles over the sorted sample.
    const Moments m = moments_of(buf);
    std::sort(buf.begin(), buf.end());
    const FiveNumber five = summary_of_sorted(buf);
    double d = distance(plan.obs, five);
    // Exploding parameters can push samples to infinity; such draws are
    // simply never competitive.
    if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
    return Candidate{d, iter, m.mean, m.sd, plan.family};
}

std::uint64_t stream_id(Family family, std::uint64_t chunk) {
    return (static_cast<std::uint64_t>(family) << 48) | chunk;
}

// Runs every arm for n_simul iterations and returns each arm's K best
// candidates in ascending (distance, index) order. Work is split into
// chunks; each (arm, chunk) pair owns RNG stream (arm << 48) | chunk, so
// the candidate set is a pure function of (plans, cfg.seed).
std::vector<std::vector<Candidate>> run_arms(const std::vector<ArmPlan>& plans,
                                             const AbcConfig& cfg,
                                             const RunHooks& hooks) {
    const std::uint64_t K = retained_count(cfg);
    const std::uint64_t chunk = cfg.chunk_size;
    const std::uint64_t chunks_per_arm = (cfg.n_simul + chunk - 1) / chunk;
    if (chunks_per_arm >> 48)
        throw BadConfig("n_simul / chunk_size exceeds the stream space");
    const std::size_t n_arms = plans.size();
    const std::uint64_t total_tasks = chunks_per_arm * n_arms;
    const std::uint64_t total_iters = cfg.n_simul * n_arms;

    unsigned n_threads =
        cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    if (n_threads < 1) n_threads = 1;
    n_threads = static_cast<unsigned>(
        std::min<std::uint64_t>({n_threads, total_tasks, 64}));

    std::vector<std::vector<TopKSelector>> worker_acc;
    worker_acc.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
        std::vector<TopKSelector> per_arm;
        per_arm.reserve(n_arms);
        for (std::size_t a = 0; a < n_arms; ++a) per_arm.emplace_back(K);
        worker_acc.push_back(std::move(per_arm));
    }

    std::atomic<std::uint64_t> next_task{0};
    std::atomic<std::uint64_t> iters_done{0};
    std::atomic<bool> stop{false};
    std::mutex hook_mx;
    std::uint64_t last_reported = 0;
    std::mutex err_mx;
    std::exception_ptr first_error;

    const auto worker = [&](unsigned w) {
        std::vector<double> buf;
        try {
            for (;;) {
                if (stop.load(std::memory_order_relaxed)) return;
                const std::uint64_t t =
                    next_task.fetch_add(1, std::memory_order_relaxed);
                if (t >= total_tasks) return;
                const std::size_t arm =
                    static_cast<std::size_t>(t / chunks_per_arm);
                const std::uint64_t c = t % chunks_per_arm;
                const std::uint64_t lo = c * chunk;
                const std::uint64_t hi = std::min(lo + chunk, cfg.n_simul);
                RngStream rng(cfg.seed, stream_id(plans[arm].family, c));
                TopKSelector& acc = worker_acc[w][arm];
                for (std::uint64_t i = lo; i < hi; ++i)
                    acc.push(simulate_one(plans[arm], i, rng, buf));
                const std::uint64_t done =
                    iters_done.fetch_add(hi - lo,
                                         std::memory_order_relaxed) +
                    (hi - lo);
                if (hooks.progress) {
                    std::lock_guard<std::mutex> lk(hook_mx);
                    if (done > last_reported) {
                        last_reported = done;
                        hooks.progress(static_cast<double>(done) /
                                           static_cast<double>(total_iters),
                                       done);
                    }
                }
                if (hooks.cancel && hooks.cancel())
                    throw Cancelled("run cancelled");
            }
        } catch (...) {
            {
                std::lock_guard<std::mutex> lk(err_mx);
                if (!first_error) first_error = std::current_exception();
            }
            stop.store(true, std::memory_order_relaxed);
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w)
            pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<std::vector<Candidate>> retained;
    retained.reserve(n_arms);
    for (std::size_t a = 0; a < n_arms; ++a) {
        TopKSelector merged(K);
        for (unsigned w = 0; w < n_threads; ++w)
            merged.merge(worker_acc[w][a]);
        retained.push_back(merged.take_sorted());
    }
    return retained;
}

// Averages of the retained pseudo moments, mapped back to the data scale.
AbcResult summarize_arm(const ArmPlan& plan, const std::vector<Candidate>& top,
                        std::uint64_t k) {
    double sum_mean = 0.0;
    double sum_sd = 0.0;
    for (const Candidate& c : top) {
        sum_mean += c.pseudo_mean;
        sum_sd += c.pseudo_sd;
    }
    const double mean_u = sum_mean / static_cast<double>(top.size());
    const double sd_u = sum_sd / static_cast<double>(top.size());
    AbcResult r;
    r.family = plan.family;
    r.retained = k;
    if (plan.unit_scale) {
        const auto [m, s] = from_unit_moments(mean_u, sd_u, plan.bounds);
        r.est_mean = m;
        r.est_sd = s;
    } else {
        r.est_mean = plan.mean_offset + mean_u;
        r.est_sd = sd_u;
    }
    return r;
}

}  // namespace

AbcDetail run_abc_detailed(const SummaryStats& stats,
                           const DistributionSpec& spec, const AbcConfig& cfg,
                           const RunHooks& hooks) {
    const std::uint64_t K = retained_count(cfg);
    std::vector<ArmPlan> plans;
    plans.push_back(make_plan(stats, spec));
    auto per_arm = run_arms(plans, cfg, hooks);
    AbcDetail detail;
    detail.result = summarize_arm(plans[0], per_arm[0], K);
    detail.retained = std::move(per_arm[0]);
    return detail;
}

AbcResult run_abc(const SummaryStats& stats, const DistributionSpec& spec,
                  const AbcConfig& cfg, const RunHooks& hooks) {
    return run_abc_detailed(stats, spec, cfg, hooks).result;
}

AbcDetail run_selection_detailed(const SummaryStats& stats,
                                 const AbcConfig& cfg,
                                 const SelectionLimits& limits,
                                 const RunHooks& hooks) {
    if (!required_positive(stats))
        throw NonPositiveSupport(
            "selection runs a lognormal arm over logged summaries; apply a "
            "positive shift first (--shift) and subtract it from the mean "
            "afterwards");
    const std::uint64_t K = retained_count(cfg);
    std::vector<ArmPlan> plans;
    plans.push_back(
        make_plan(stats, DistributionSpec::normal(limits.normal_sigma_max)));
    plans.push_back(make_plan(
        stats, DistributionSpec::lognormal(limits.lognormal_sigma_max)));
    plans.push_back(
        make_plan(stats, DistributionSpec::exponential(limits.lambda_max)));
    plans.push_back(make_plan(
        stats, DistributionSpec::weibull(limits.weibull_shape_max,
                                         limits.weibull_scale_max)));
    auto per_arm = run_arms(plans, cfg, hooks);

    std::vector<Candidate> pooled;
    pooled.reserve(4 * static_cast<std::size_t>(K));
    for (const auto& arm : per_arm)
        pooled.insert(pooled.end(), arm.begin(), arm.end());
    std::sort(pooled.begin(), pooled.end(), pooled_less);
    pooled.resize(static_cast<std::size_t>(K));

    std::array<std::uint64_t, 4> counts{};
    for (const Candidate& c : pooled) ++counts[static_cast<int>(c.family)];
    std::size_t winner = 0;
    for (std::size_t a = 1; a < counts.size(); ++a)
        if (counts[a] > counts[winner]) winner = a;

    AbcDetail detail;
    detail.result = summarize_arm(plans[winner], per_arm[winner], K);
    detail.result.selection_probability =
        static_cast<double>(counts[winner]) / static_cast<double>(K);
    detail.retained = std::move(pooled);
    return detail;
}

AbcResult run_selection(const SummaryStats& stats, const AbcConfig& cfg,
                        const SelectionLimits& limits, const RunHooks& hooks) {
    return run_selection_detailed(stats, cfg, limits, hooks).result;
}

}  // namespace abcmeta
