#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "abcmeta/batch.hpp"
#include "abcmeta/engine.hpp"
#include "abcmeta/errors.hpp"
#include "abcmeta/rescale.hpp"
#include "abcmeta/version.hpp"

namespace py = pybind11;
using namespace abcmeta;

namespace {

std::string stats_repr(const SummaryStats& s) {
    std::ostringstream os;
    os << "SummaryStats(n=" << s.n << ", scenario=" << to_string(s.scenario);
    const auto field = [&os](const char* name, const std::optional<double>& v) {
        if (v) os << ", " << name << "=" << *v;
    };
    field("min", s.min);
    field("q1", s.q1);
    os << ", median=" << s.median;
    field("q3", s.q3);
    field("max", s.max);
    os << ")";
    return os.str();
}

std::string result_repr(const AbcResult& r) {
    std::ostringstream os;
    os << "AbcResult(family=" << to_string(r.family)
       << ", est_mean=" << r.est_mean << ", est_sd=" << r.est_sd
       << ", retained=" << r.retained;
    if (r.selection_probability)
        os << ", selection_probability=" << *r.selection_probability;
    os << ")";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_abcmeta, m) {
    m.doc() =
        "Estimate a study's mean and SD from reported summary statistics "
        "(min/quartiles/median/max) by approximate Bayesian computation";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "AbcmetaError");

    py::enum_<Scenario>(m, "Scenario")
        .value("S1", Scenario::S1)
        .value("S2", Scenario::S2)
        .value("S3", Scenario::S3);

    py::enum_<Family>(m, "Family")
        .value("normal", Family::Normal)
        .value("lognormal", Family::Lognormal)
        .value("exponential", Family::Exponential)
        .value("weibull", Family::Weibull)
        .value("beta", Family::Beta);

    py::class_<SummaryStats>(m, "SummaryStats")
        .def_readonly("n", &SummaryStats::n)
        .def_readonly("min", &SummaryStats::min)
        .def_readonly("q1", &SummaryStats::q1)
        .def_readonly("median", &SummaryStats::median)
        .def_readonly("q3", &SummaryStats::q3)
        .def_readonly("max", &SummaryStats::max)
        .def_readonly("scenario", &SummaryStats::scenario)
        .def_readonly("degenerate", &SummaryStats::degenerate)
        .def("__repr__", &stats_repr);

    m.def("parse_summary", &parse_summary, py::arg("n"),
          py::arg("min") = py::none(), py::arg("q1") = py::none(),
          py::arg("median"), py::arg("q3") = py::none(),
          py::arg("max") = py::none(),
          "Validate reported summaries and classify the scenario");
    m.def("required_positive", &required_positive, py::arg("stats"));

    py::class_<DistributionSpec>(m, "DistributionSpec")
        .def_static("normal", &DistributionSpec::normal,
                    py::arg("sigma_max") = 50.0)
        .def_static("lognormal", &DistributionSpec::lognormal,
                    py::arg("sigma_max") = 10.0)
        .def_static("exponential", &DistributionSpec::exponential,
                    py::arg("lambda_max") = 40.0)
        .def_static("weibull", &DistributionSpec::weibull,
                    py::arg("shape_max") = 50.0, py::arg("scale_max") = 50.0)
        .def_static("beta", &DistributionSpec::beta,
                    py::arg("alpha_max") = 40.0, py::arg("beta_max") = 40.0,
                    py::arg("lower") = 0.0, py::arg("upper") = 100.0)
        .def_readonly("family", &DistributionSpec::family);

    py::class_<AbcConfig>(m, "AbcConfig")
        .def(py::init<>())
        .def_readwrite("n_simul", &AbcConfig::n_simul)
        .def_readwrite("acceptance_pct", &AbcConfig::acceptance_pct)
        .def_readwrite("seed", &AbcConfig::seed)
        .def_readwrite("chunk_size", &AbcConfig::chunk_size)
        .def_readwrite("threads", &AbcConfig::threads);

    py::class_<AbcResult>(m, "AbcResult")
        .def_readonly("est_mean", &AbcResult::est_mean)
        .def_readonly("est_sd", &AbcResult::est_sd)
        .def_readonly("retained", &AbcResult::retained)
        .def_readonly("family", &AbcResult::family)
        .def_readonly("selection_probability",
                      &AbcResult::selection_probability)
        .def("__repr__", &result_repr);

    py::class_<SelectionLimits>(m, "SelectionLimits")
        .def(py::init<>())
        .def_readwrite("normal_sigma_max", &SelectionLimits::normal_sigma_max)
        .def_readwrite("lognormal_sigma_max",
                       &SelectionLimits::lognormal_sigma_max)
        .def_readwrite("lambda_max", &SelectionLimits::lambda_max)
        .def_readwrite("weibull_shape_max",
                       &SelectionLimits::weibull_shape_max)
        .def_readwrite("weibull_scale_max",
                       &SelectionLimits::weibull_scale_max);

    m.def(
        "run_abc",
        [](const SummaryStats& stats, const DistributionSpec& spec,
           const AbcConfig& cfg) {
            py::gil_scoped_release release;
            return run_abc(stats, spec, cfg);
        },
        py::arg("stats"), py::arg("spec"), py::arg("cfg") = AbcConfig{},
        "Rejection-ABC estimate of mean and SD for one family");
    m.def(
        "run_selection",
        [](const SummaryStats& stats, const AbcConfig& cfg,
           const SelectionLimits& limits) {
            py::gil_scoped_release release;
            return run_selection(stats, cfg, limits);
        },
        py::arg("stats"), py::arg("cfg") = AbcConfig{},
        py::arg("limits") = SelectionLimits{},
        "Pick the best-fitting family among normal/lognormal/exponential/"
        "weibull and estimate from it");

    py::class_<FiveNumber>(m, "FiveNumber")
        .def_readonly("min", &FiveNumber::min)
        .def_readonly("q1", &FiveNumber::q1)
        .def_readonly("median", &FiveNumber::median)
        .def_readonly("q3", &FiveNumber::q3)
        .def_readonly("max", &FiveNumber::max);

    m.def(
        "summary_of",
        [](const std::vector<double>& sample) { return summary_of(sample); },
        py::arg("sample"),
        "Five-number summary with linearly interpolated quartiles");
    m.def(
        "moments_of",
        [](const std::vector<double>& sample) {
            const Moments mo = moments_of(sample);
            return py::make_tuple(mo.mean, mo.sd);
        },
        py::arg("sample"), "Mean and sample SD (n-1 denominator)");

    m.def("apply_shift", &apply_shift, py::arg("stats"), py::arg("c"),
          "Positive-shift trick: add c to every summary");
    m.def("shift_stats", &shift_stats, py::arg("stats"), py::arg("c"));
    m.def("unshift_result", &unshift_result, py::arg("result"), py::arg("c"),
          "Subtract the shift constant from the estimated mean");
    m.def("derive_study_seed", &derive_study_seed, py::arg("global_seed"),
          py::arg("study_id"));
}
