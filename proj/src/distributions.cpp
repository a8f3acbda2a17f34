#include "abcmeta/distributions.hpp"

#include <cmath>
#include <string>

#include "abcmeta/errors.hpp"

namespace abcmeta {

const char* to_string(Family f) noexcept {
    switch (f) {
        case Family::Normal: return "normal";
        case Family::Lognormal: return "lognormal";
        case Family::Exponential: return "exponential";
        case Family::Weibull: return "weibull";
        case Family::Beta: return "beta";
    }
    return "?";
}

std::optional<Family> family_from_string(std::string_view name) noexcept {
    if (name == "normal") return Family::Normal;
    if (name == "lognormal") return Family::Lognormal;
    if (name == "exponential") return Family::Exponential;
    if (name == "weibull") return Family::Weibull;
    if (name == "beta") return Family::Beta;
    return std::nullopt;
}

DistributionSpec DistributionSpec::normal(double sigma_max) {
    DistributionSpec s;
    s.family = Family::Normal;
    s.sigma_max = sigma_max;
    return s;
}

DistributionSpec DistributionSpec::lognormal(double sigma_max) {
    DistributionSpec s;
    s.family = Family::Lognormal;
    s.sigma_max = sigma_max;
    return s;
}

DistributionSpec DistributionSpec::exponential(double lambda_max) {
    DistributionSpec s;
    s.family = Family::Exponential;
    s.lambda_max = lambda_max;
    return s;
}

DistributionSpec DistributionSpec::weibull(double shape_max, double scale_max) {
    DistributionSpec s;
    s.family = Family::Weibull;
    s.shape_max = shape_max;
    s.scale_max = scale_max;
    return s;
}

DistributionSpec DistributionSpec::beta(double alpha_max, double beta_max,
                                        double lower, double upper) {
    DistributionSpec s;
    s.family = Family::Beta;
    s.alpha_max = alpha_max;
    s.beta_max = beta_max;
    s.lower = lower;
    s.upper = upper;
    return s;
}

void DistributionSpec::validate() const {
    const auto need_pos = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidParam(std::string(name) + " must be positive, got " +
                               std::to_string(v));
    };
    switch (family) {
        case Family::Normal:
        case Family::Lognormal:
            need_pos(sigma_max, "sigma_max");
            break;
        case Family::Exponential:
            need_pos(lambda_max, "lambda_max");
            break;
        case Family::Weibull:
            need_pos(shape_max, "shape_max");
            need_pos(scale_max, "scale_max");
            break;
        case Family::Beta:
            need_pos(alpha_max, "alpha_max");
            need_pos(beta_max, "beta_max");
            if (!(lower < upper) || !std::isfinite(lower) ||
                !std::isfinite(upper))
                throw InvalidParam("beta bounds need lower < upper");
            break;
    }
}

Family family_of(const ParamDraw& draw) noexcept {
    return static_cast<Family>(draw.index());
}

std::pair<double, double> location_prior_bounds(const SummaryStats& stats) {
    if (stats.q1 && stats.q3) return {*stats.q1, *stats.q3};
    return {*stats.min, *stats.max};
}

namespace {

// Scale-like parameters must stay off the zero boundary; the generator
// cannot emit u = 0, so this loop exists only as a guard.
double positive_uniform(double max, RngStream& rng) {
    double v;
    do {
        v = max * rng.uniform01();
    } while (v == 0.0);
    return v;
}

}  // namespace

ParamDraw draw_params(const DistributionSpec& spec, const SummaryStats& stats,
                      RngStream& rng) {
    spec.validate();
    switch (spec.family) {
        case Family::Normal: {
            const auto [lo, hi] = location_prior_bounds(stats);
            const double mu = rng.uniform(lo, hi);
            return NormalParams{mu, positive_uniform(spec.sigma_max, rng)};
        }
        case Family::Lognormal: {
            if (!required_positive(stats))
                throw NonPositiveSupport(
                    "lognormal prior takes logs; all summaries must be > 0");
            const auto [lo, hi] = location_prior_bounds(stats);
            const double mu = rng.uniform(std::log(lo), std::log(hi));
            return LognormalParams{mu, positive_uniform(spec.sigma_max, rng)};
        }
        case Family::Exponential:
            return ExponentialParams{positive_uniform(spec.lambda_max, rng)};
        case Family::Weibull: {
            const double shape = positive_uniform(spec.shape_max, rng);
            const double scale = positive_uniform(spec.scale_max, rng);
            return WeibullParams{shape, scale};
        }
        case Family::Beta: {
            const double a = positive_uniform(spec.alpha_max, rng);
            const double b = positive_uniform(spec.beta_max, rng);
            return BetaParams{a, b};
        }
    }
    throw InvalidParam("unknown family");
}

double gamma_draw(double shape, RngStream& rng) {
    if (!(shape > 0.0)) throw InvalidParam("gamma shape must be positive");
    if (shape < 1.0) {
        const double g = gamma_draw(shape + 1.0, rng);
        return g * std::pow(rng.uniform01(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

namespace {

void check_positive(double v, const char* name) {
    if (!(v > 0.0))
        throw InvalidParam(std::string(name) + " must be positive, got " +
                           std::to_string(v));
}

}  // namespace

void sample_pseudo(Family family, const ParamDraw& draw, std::int64_t n,
                   RngStream& rng, std::vector<double>& out) {
    if (n < 1) throw InvalidParam("sample size must be positive");
    if (family_of(draw) != family)
        throw InvalidParam("parameter draw does not match family");
    out.clear();
    out.reserve(static_cast<std::size_t>(n));
    switch (family) {
        case Family::Normal: {
            const auto& p = std::get<NormalParams>(draw);
            check_positive(p.sigma, "sigma");
            for (std::int64_t i = 0; i < n; ++i)
                out.push_back(p.mu + p.sigma * rng.normal());
            break;
        }
        case Family::Lognormal: {
            const auto& p = std::get<LognormalParams>(draw);
            check_positive(p.sigma, "sigma");
            for (std::int64_t i = 0; i < n; ++i)
                out.push_back(std::exp(p.mu + p.sigma * rng.normal()));
            break;
        }
        case Family::Exponential: {
            const auto& p = std::get<ExponentialParams>(draw);
            check_positive(p.lambda, "lambda");
            for (std::int64_t i = 0; i < n; ++i)
                out.push_back(-p.lambda * std::log(rng.uniform01()));
            break;
        }
        case Family::Weibull: {
            const auto& p = std::get<WeibullParams>(draw);
            check_positive(p.shape, "shape");
            check_positive(p.scale, "scale");
            const double inv_shape = 1.0 / p.shape;
            for (std::int64_t i = 0; i < n; ++i)
                out.push_back(p.scale *
                              std::pow(-std::log(rng.uniform01()), inv_shape));
            break;
        }
        case Family::Beta: {
            const auto& p = std::get<BetaParams>(draw);
            check_positive(p.alpha, "alpha");
            check_positive(p.beta, "beta");
            for (std::int64_t i = 0; i < n; ++i) {
                const double g1 = gamma_draw(p.alpha, rng);
                const double g2 = gamma_draw(p.beta, rng);
                const double s = g1 + g2;
                // Both gammas can underflow to 0 for tiny shapes.
                out.push_back(s == 0.0 ? 0.0 : g1 / s);
            }
            break;
        }
    }
}

std::vector<double> sample_pseudo(Family family, const ParamDraw& draw,
                                  std::int64_t n, RngStream& rng) {
    std::vector<double> out;
    sample_pseudo(family, draw, n, rng, out);
    return out;
}

}  // namespace abcmeta
