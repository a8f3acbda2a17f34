#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "abcmeta/rng.hpp"
#include "abcmeta/stats.hpp"
#include "abcmeta/summary.hpp"

namespace abcmeta {

// Order matters: it is the arm index in selection mode and the tie-break
// order when two families retain equally many candidates.
enum class Family : int {
    Normal = 0,
    Lognormal = 1,
    Exponential = 2,
    Weibull = 3,
    Beta = 4,
};

const char* to_string(Family f) noexcept;
std::optional<Family> family_from_string(std::string_view name) noexcept;

// Family plus its prior limits. Knobs not used by `family` are ignored.
// Defaults are the standard priors: sigma_max 50 (normal) / 10 (lognormal),
// lambda_max 40 with lambda the exponential MEAN, weibull shape/scale 50,
// beta alpha/beta 40 on support [0, 100].
struct DistributionSpec {
    Family family = Family::Normal;
    double sigma_max = 50.0;
    double lambda_max = 40.0;
    double shape_max = 50.0;
    double scale_max = 50.0;
    double alpha_max = 40.0;
    double beta_max = 40.0;
    double lower = 0.0;
    double upper = 100.0;

    static DistributionSpec normal(double sigma_max = 50.0);
    static DistributionSpec lognormal(double sigma_max = 10.0);
    static DistributionSpec exponential(double lambda_max = 40.0);
    static DistributionSpec weibull(double shape_max = 50.0,
                                    double scale_max = 50.0);
    static DistributionSpec beta(double alpha_max = 40.0,
                                 double beta_max = 40.0, double lower = 0.0,
                                 double upper = 100.0);

    // Throws InvalidParam if the family's own limits are unusable.
    void validate() const;
};

struct NormalParams { double mu; double sigma; };
struct LognormalParams { double mu; double sigma; };
struct ExponentialParams { double lambda; };  // mean, not rate
struct WeibullParams { double shape; double scale; };
struct BetaParams { double alpha; double beta; };

using ParamDraw = std::variant<NormalParams, LognormalParams,
                               ExponentialParams, WeibullParams, BetaParams>;

Family family_of(const ParamDraw& draw) noexcept;

// Location-prior bounds for the Normal/Lognormal mean: (q1, q3) when the
// quartiles are reported (S2 and S3), (min, max) otherwise (S1). Quartiles
// bracket the mean far more tightly than the extremes, so they win whenever
// they are available.
std::pair<double, double> location_prior_bounds(const SummaryStats& stats);

// One prior draw. Location first, then scale-like parameters, so consumers
// can rely on the stream layout.
ParamDraw draw_params(const DistributionSpec& spec, const SummaryStats& stats,
                      RngStream& rng);

// n variates appended into `out` (cleared first). Normal is exactly
// mu + sigma*z; lognormal exp(mu + sigma*z); exponential -lambda*ln(u);
// weibull scale*(-ln u)^(1/shape); beta a gamma ratio.
void sample_pseudo(Family family, const ParamDraw& draw, std::int64_t n,
                   RngStream& rng, std::vector<double>& out);

std::vector<double> sample_pseudo(Family family, const ParamDraw& draw,
                                  std::int64_t n, RngStream& rng);

// Standard gamma variate, unit scale (Marsaglia-Tsang, with the
// G(a+1)*U^(1/a) boost below shape 1).
double gamma_draw(double shape, RngStream& rng);

}  // namespace abcmeta
