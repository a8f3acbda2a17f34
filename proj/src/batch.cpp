#include "abcmeta/batch.hpp"

#include <array>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "abcmeta/errors.hpp"
#include "abcmeta/rescale.hpp"

namespace abcmeta {

namespace {

constexpr std::array<const char*, 9> kColumns = {
    "study_id", "n",  "min",          "q1",   "median",
    "q3",       "max", "distribution", "shift"};

std::string where(std::size_t line) { return "line " + std::to_string(line); }

std::vector<std::string> split_csv(const std::string& line,
                                   std::size_t line_no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (quoted) throw ParseError(where(line_no) + ": unterminated quote");
    out.push_back(cur);
    return out;
}

double parse_double_cell(const std::string& cell, std::size_t line_no,
                         const char* col) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0' || !std::isfinite(v))
        throw ParseError(where(line_no) + ", column " + col + ": '" + cell +
                         "' is not a finite number");
    return v;
}

std::int64_t parse_int_cell(const std::string& cell, std::size_t line_no,
                            const char* col) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(cell.c_str(), &end, 10);
    if (end == cell.c_str() || *end != '\0' || errno == ERANGE)
        throw ParseError(where(line_no) + ", column " + col + ": '" + cell +
                         "' is not an integer");
    return v;
}

void set_distribution(StudyRecord& rec, const std::string& text,
                      const std::string& location) {
    if (text == "select") {
        rec.select = true;
        return;
    }
    const auto fam = family_from_string(text);
    if (!fam)
        throw ParseError(location + ": unknown distribution '" + text + "'");
    rec.family = fam;
}

void check_unique_id(std::set<std::string>& seen, const std::string& id,
                     const std::string& location) {
    if (id.empty()) throw ParseError(location + ": study_id must not be empty");
    if (!seen.insert(id).second)
        throw ParseError(location + ": duplicate study_id '" + id + "'");
}

}  // namespace

BatchFile parse_batch_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv(line, 1);
    std::array<int, kColumns.size()> pos;
    pos.fill(-1);
    for (std::size_t i = 0; i < header.size(); ++i) {
        bool known = false;
        for (std::size_t c = 0; c < kColumns.size(); ++c) {
            if (header[i] == kColumns[c]) {
                if (pos[c] != -1)
                    throw ParseError("line 1: duplicate column '" +
                                     header[i] + "'");
                pos[c] = static_cast<int>(i);
                known = true;
                break;
            }
        }
        if (!known)
            throw ParseError("line 1: unknown column '" + header[i] + "'");
    }
    if (pos[0] == -1 || pos[1] == -1)
        throw ParseError("line 1: columns study_id and n are required");

    const auto cell = [&](const std::vector<std::string>& fields,
                          std::size_t col) -> const std::string* {
        const int p = pos[col];
        if (p < 0) return nullptr;
        const auto& s = fields[static_cast<std::size_t>(p)];
        return s.empty() ? nullptr : &s;
    };

    BatchFile batch;
    std::set<std::string> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv(line, line_no);
        if (fields.size() != header.size())
            throw ParseError(where(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        StudyRecord rec;
        rec.study_id = fields[static_cast<std::size_t>(pos[0])];
        check_unique_id(seen, rec.study_id, where(line_no));
        rec.n = parse_int_cell(fields[static_cast<std::size_t>(pos[1])],
                               line_no, "n");
        if (const auto* s = cell(fields, 2))
            rec.min = parse_double_cell(*s, line_no, "min");
        if (const auto* s = cell(fields, 3))
            rec.q1 = parse_double_cell(*s, line_no, "q1");
        if (const auto* s = cell(fields, 4))
            rec.median = parse_double_cell(*s, line_no, "median");
        if (const auto* s = cell(fields, 5))
            rec.q3 = parse_double_cell(*s, line_no, "q3");
        if (const auto* s = cell(fields, 6))
            rec.max = parse_double_cell(*s, line_no, "max");
        if (const auto* s = cell(fields, 7))
            set_distribution(rec, *s, where(line_no));
        if (const auto* s = cell(fields, 8))
            rec.shift = parse_double_cell(*s, line_no, "shift");
        batch.push_back(std::move(rec));
    }
    return batch;
}

BatchFile parse_batch_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_array())
        throw ParseError("top level must be an array of study objects");

    BatchFile batch;
    std::set<std::string> seen;
    std::size_t idx = 0;
    for (const auto& obj : j) {
        ++idx;
        const std::string location = "study " + std::to_string(idx);
        if (!obj.is_object())
            throw ParseError(location + ": not an object");
        for (const auto& item : obj.items()) {
            bool known = false;
            for (const char* c : kColumns)
                if (item.key() == c) known = true;
            if (!known)
                throw ParseError(location + ": unknown field '" + item.key() +
                                 "'");
        }
        const auto number_field =
            [&](const char* name) -> std::optional<double> {
            if (!obj.contains(name) || obj[name].is_null())
                return std::nullopt;
            if (!obj[name].is_number())
                throw ParseError(location + ": field '" + name +
                                 "' must be a number");
            const double v = obj[name].get<double>();
            if (!std::isfinite(v))
                throw ParseError(location + ": field '" + name +
                                 "' must be finite");
            return v;
        };

        StudyRecord rec;
        if (!obj.contains("study_id") || !obj["study_id"].is_string())
            throw ParseError(location + ": string field 'study_id' required");
        rec.study_id = obj["study_id"].get<std::string>();
        check_unique_id(seen, rec.study_id, location);
        if (!obj.contains("n") ||
            !(obj["n"].is_number_integer() || obj["n"].is_number_unsigned()))
            throw ParseError(location + ": integer field 'n' required");
        rec.n = obj["n"].get<std::int64_t>();
        rec.min = number_field("min");
        rec.q1 = number_field("q1");
        rec.median = number_field("median");
        rec.q3 = number_field("q3");
        rec.max = number_field("max");
        rec.shift = number_field("shift");
        if (obj.contains("distribution") && !obj["distribution"].is_null()) {
            if (!obj["distribution"].is_string())
                throw ParseError(location +
                                 ": field 'distribution' must be a string");
            set_distribution(rec, obj["distribution"].get<std::string>(),
                             location);
        }
        batch.push_back(std::move(rec));
    }
    return batch;
}

BatchFile load_batch(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return parse_batch_json(in);
    return parse_batch_csv(in);
}

DistributionSpec PriorOverrides::build(Family family) const {
    DistributionSpec spec;
    switch (family) {
        case Family::Normal:
            spec = DistributionSpec::normal(sigma_max.value_or(50.0));
            break;
        case Family::Lognormal:
            spec = DistributionSpec::lognormal(sigma_max.value_or(10.0));
            break;
        case Family::Exponential:
            spec = DistributionSpec::exponential(lambda_max.value_or(40.0));
            break;
        case Family::Weibull:
            spec = DistributionSpec::weibull(shape_max.value_or(50.0),
                                             scale_max.value_or(50.0));
            break;
        case Family::Beta:
            spec = DistributionSpec::beta(alpha_max.value_or(40.0),
                                          beta_max.value_or(40.0),
                                          lower.value_or(0.0),
                                          upper.value_or(100.0));
            break;
    }
    spec.validate();
    return spec;
}

SelectionLimits PriorOverrides::selection() const {
    SelectionLimits lim;
    if (sigma_max) lim.normal_sigma_max = *sigma_max;
    if (lambda_max) lim.lambda_max = *lambda_max;
    if (shape_max) lim.weibull_shape_max = *shape_max;
    if (scale_max) lim.weibull_scale_max = *scale_max;
    return lim;
}

std::uint64_t derive_study_seed(std::uint64_t global_seed,
                                std::string_view study_id) {
    // FNV-1a over (seed bytes, id bytes), then a splitmix finalizer.
    std::uint64_t h = 14695981039346656037ull;
    const auto mix = [&h](unsigned char b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    for (int i = 0; i < 8; ++i)
        mix(static_cast<unsigned char>(global_seed >> (8 * i)));
    for (const char ch : study_id) mix(static_cast<unsigned char>(ch));
    h += 0x9E3779B97F4A7C15ull;
    h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull;
    h = (h ^ (h >> 27)) * 0x94D049BB133111EBull;
    return h ^ (h >> 31);
}

RunReport run_batch(const BatchFile& batch, const BatchOptions& opts,
                    const StudyProgress& progress) {
    opts.cfg.validate();
    RunReport report;
    report.reserve(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const StudyRecord& rec = batch[i];
        ReportRow row;
        row.study_id = rec.study_id;
        row.n_simul = opts.cfg.n_simul;
        row.seed = derive_study_seed(opts.cfg.seed, rec.study_id);
        const auto started = std::chrono::steady_clock::now();
        try {
            if (!rec.median)
                throw UnsupportedPattern("median is required");
            SummaryStats stats = parse_summary(rec.n, rec.min, rec.q1,
                                               *rec.median, rec.q3, rec.max);
            const bool select =
                rec.select || (!rec.family && opts.default_select);
            const Family family = rec.family.value_or(opts.default_family);
            const double shift = rec.shift.value_or(0.0);
            if (shift != 0.0) {
                // Positivity matters only to arms that take logs.
                stats = (select || family == Family::Lognormal)
                            ? apply_shift(stats, shift)
                            : shift_stats(stats, shift);
                row.shift = shift;
            }
            row.scenario = stats.scenario;
            AbcConfig cfg = opts.cfg;
            cfg.seed = row.seed;
            RunHooks hooks;
            if (progress)
                hooks.progress = [&](double f, std::uint64_t it) {
                    progress(i, rec, f, it);
                };
            AbcResult res =
                select ? run_selection(stats, cfg, opts.priors.selection(),
                                       hooks)
                       : run_abc(stats, opts.priors.build(family), cfg, hooks);
            if (shift != 0.0) res = unshift_result(res, shift);
            row.family = res.family;
            row.result = res;
        } catch (const Error& e) {
            if (opts.fail_fast) throw;
            row.error = e.what();
        }
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - started)
                          .count();
        report.push_back(std::move(row));
    }
    return report;
}

std::string format_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string json_string(const std::string& s) {
    return nlohmann::json(s).dump();
}

// JSON number token; non-finite values become null.
std::string json_number(double v) {
    return std::isfinite(v) ? format_g6(v) : "null";
}

}  // namespace

void write_report_csv(std::ostream& os, const RunReport& report) {
    os << "study_id,scenario,family,est_mean,est_sd,selection_probability,"
          "retained,n_simul,seed,error\n";
    for (const ReportRow& row : report) {
        os << csv_escape(row.study_id) << ',';
        if (row.scenario) os << to_string(*row.scenario);
        os << ',';
        if (row.family) os << to_string(*row.family);
        os << ',';
        if (row.result) os << format_g6(row.result->est_mean);
        os << ',';
        if (row.result) os << format_g6(row.result->est_sd);
        os << ',';
        if (row.result && row.result->selection_probability)
            os << format_g6(*row.result->selection_probability);
        os << ',';
        if (row.result) os << row.result->retained;
        os << ',';
        os << row.n_simul << ',' << row.seed << ',';
        os << csv_escape(row.error) << '\n';
    }
}

std::string report_row_json(const ReportRow& row, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string inner = pad + "  ";
    std::string out = pad + "{\n";
    const auto field = [&](const char* name, const std::string& value) {
        out += inner + '"' + name + "\": " + value + ",\n";
    };
    if (!row.study_id.empty())
        field("study_id", json_string(row.study_id));
    if (row.scenario) field("scenario", json_string(to_string(*row.scenario)));
    if (row.family) field("family", json_string(to_string(*row.family)));
    if (row.result) {
        field("est_mean", json_number(row.result->est_mean));
        field("est_sd", json_number(row.result->est_sd));
        if (row.result->selection_probability)
            field("selection_probability",
                  json_number(*row.result->selection_probability));
        field("retained", std::to_string(row.result->retained));
    }
    if (row.shift) field("shift", json_number(*row.shift));
    field("n_simul", std::to_string(row.n_simul));
    field("seed", std::to_string(row.seed));
    if (!row.error.empty()) field("error", json_string(row.error));
    // drop the trailing comma
    out.erase(out.size() - 2, 1);
    out += pad + "}";
    return out;
}

void write_report_json(std::ostream& os, const RunReport& report) {
    os << "[\n";
    for (std::size_t i = 0; i < report.size(); ++i) {
        os << report_row_json(report[i], 2);
        if (i + 1 < report.size()) os << ',';
        os << '\n';
    }
    os << "]\n";
}

}  // namespace abcmeta
