#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "eagle/harness.hpp"

namespace eagle {

using nlohmann::json;

namespace {

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

json finite_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

double double_or_inf(const json& j)
{
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

template <class T>
json opt(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j)
{
    if (j.is_null())
        return std::nullopt;
    return j.get<T>();
}

void only_keys(const json& j, std::string_view section, std::initializer_list<std::string_view> keys)
{
    if (!j.is_object())
        throw ConfigError("'" + std::string(section) + "' must be an object");
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (std::string_view allowed : keys)
            known = known || k == allowed;
        if (!known)
            throw ConfigError("unknown key '" + k + "' in '" + std::string(section) + "'");
    }
}

template <class T>
void take(const json& j, const char* key, T& out)
{
    if (j.contains(key))
        out = j.at(key).get<T>();
}

void take_count(const json& j, const char* key, std::size_t& out)
{
    if (!j.contains(key))
        return;
    const json& v = j.at(key);
    if (!v.is_number_unsigned())
        throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
    out = v.get<std::size_t>();
}

json de_json(const DeConfig& c)
{
    return {{"n", c.n},
            {"f", c.f},
            {"cr", c.cr},
            {"max_evals", c.max_evals},
            {"bounds_mode", c.bounds_mode == BoundsMode::clamp ? "clamp" : "reflect"},
            {"stall_generations", c.stall_generations},
            {"stall_tol", c.stall_tol},
            {"collapse_tol", c.collapse_tol}};
}

void apply_de(DeConfig& c, const json& j, std::string_view section)
{
    only_keys(j, section, {"n", "f", "cr", "max_evals", "bounds_mode", "stall_generations", "stall_tol", "collapse_tol"});
    take_count(j, "n", c.n);
    take(j, "f", c.f);
    take(j, "cr", c.cr);
    take_count(j, "max_evals", c.max_evals);
    if (j.contains("bounds_mode")) {
        const std::string m = j.at("bounds_mode").get<std::string>();
        if (m == "clamp")
            c.bounds_mode = BoundsMode::clamp;
        else if (m == "reflect")
            c.bounds_mode = BoundsMode::reflect;
        else
            throw ConfigError("bounds_mode must be 'clamp' or 'reflect'");
    }
    take_count(j, "stall_generations", c.stall_generations);
    take(j, "stall_tol", c.stall_tol);
    take(j, "collapse_tol", c.collapse_tol);
}

json summary_json(const AlgorithmSummary& s)
{
    return {{"runs", s.runs},
            {"successes", s.successes},
            {"median_evals", opt(s.median_evals)},
            {"mean_evals", opt(s.mean_evals)},
            {"best_raw", opt(s.best_raw)}};
}

AlgorithmSummary summary_from(const json& j)
{
    AlgorithmSummary s;
    s.runs = j.at("runs").get<std::size_t>();
    s.successes = j.at("successes").get<std::size_t>();
    s.median_evals = opt_from<double>(j.at("median_evals"));
    s.mean_evals = opt_from<double>(j.at("mean_evals"));
    s.best_raw = opt_from<double>(j.at("best_raw"));
    return s;
}

std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

std::string evals_cell(const std::optional<double>& v)
{
    if (!v)
        return "-";
    char buf[32];
    if (*v == std::floor(*v))
        std::snprintf(buf, sizeof buf, "%.0f", *v);
    else
        std::snprintf(buf, sizeof buf, "%.1f", *v);
    return buf;
}

std::string percent(double ratio)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * ratio);
    return buf;
}

std::string render_table(const Report& r)
{
    std::size_t w = 7;
    for (const ProblemSummary& p : r.problems)
        w = std::max(w, p.problem.size());
    char line[256];
    std::string out;
    std::snprintf(line, sizeof line, "%-*s | %9s | %9s | %7s\n", int(w), "Problem", "Pure DE", "ES", "ES/DE");
    out += line;
    out += std::string(w, '-') + "-+-----------+-----------+--------\n";
    for (const ProblemSummary& p : r.problems) {
        std::snprintf(line, sizeof line, "%-*s | %9s | %9s | %7s\n", int(w), p.problem.c_str(),
                      evals_cell(p.de.median_evals).c_str(), evals_cell(p.es.median_evals).c_str(),
                      p.ratio ? percent(*p.ratio).c_str() : "-");
        out += line;
    }
    if (r.median_ratio)
        out += "\nmedian ES/DE over problems: " + percent(*r.median_ratio) + "\n";
    return out;
}

std::string render_csv(const Report& r)
{
    std::string out = "problem";
    for (const char* a : {"de", "es"})
        for (const char* f : {"runs", "successes", "median_evals", "mean_evals", "best_raw"})
            out += std::string(",") + a + "_" + f;
    out += ",ratio\n";
    auto cell = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
    for (const ProblemSummary& p : r.problems) {
        out += csv_field(p.problem);
        for (const AlgorithmSummary* s : {&p.de, &p.es})
            out += "," + std::to_string(s->runs) + "," + std::to_string(s->successes) + "," + cell(s->median_evals) +
                   "," + cell(s->mean_evals) + "," + cell(s->best_raw);
        out += "," + cell(p.ratio) + "\n";
    }
    return out;
}

json report_json(const Report& r)
{
    json problems = json::array();
    for (const ProblemSummary& p : r.problems)
        problems.push_back(
            {{"problem", p.problem}, {"de", summary_json(p.de)}, {"es", summary_json(p.es)}, {"ratio", opt(p.ratio)}});
    return {{"format", "eagle-report"},
            {"version", r.version},
            {"tool_version", r.tool_version},
            {"started_at", r.started_at},
            {"finished_at", r.finished_at},
            {"config", r.config},
            {"problems", problems},
            {"median_ratio", opt(r.median_ratio)}};
}

} // namespace

std::string render_report(const Report& report, ReportFormat format)
{
    switch (format) {
    case ReportFormat::table: return render_table(report);
    case ReportFormat::csv: return render_csv(report);
    case ReportFormat::json: return report_json(report).dump(2) + "\n";
    }
    return {};
}

Report parse_report(std::string_view text)
{
    const json j = json::parse(text);
    if (j.at("format") != "eagle-report")
        throw std::invalid_argument("not an eagle report");
    Report r;
    r.version = j.at("version").get<int>();
    r.tool_version = j.at("tool_version").get<std::string>();
    r.started_at = j.at("started_at").get<std::string>();
    r.finished_at = j.at("finished_at").get<std::string>();
    r.config = j.at("config");
    for (const json& p : j.at("problems")) {
        ProblemSummary s;
        s.problem = p.at("problem").get<std::string>();
        s.de = summary_from(p.at("de"));
        s.es = summary_from(p.at("es"));
        s.ratio = opt_from<double>(p.at("ratio"));
        r.problems.push_back(std::move(s));
    }
    r.median_ratio = opt_from<double>(j.at("median_ratio"));
    return r;
}

json to_json(const SuiteConfig& c)
{
    const EsConfig& e = c.es;
    return {{"problems", c.problems},
            {"seeds", c.seeds},
            {"root_seed", c.root_seed},
            {"stop_at_target", c.stop_at_target},
            {"threads", c.threads},
            {"de", de_json(c.de)},
            {"es",
             {{"scouts", e.scouts},
              {"levy", {{"beta", e.levy.beta}, {"alpha", e.levy.alpha}, {"step_scale", e.levy.step_scale}}},
              {"local_de", de_json(e.local_de)},
              {"alternate_cr", e.alternate_cr},
              {"region_radius", e.region_radius},
              {"radius_decay", e.radius_decay},
              {"min_radius", e.min_radius},
              {"improvement_tol", e.improvement_tol},
              {"max_evals", e.max_evals},
              {"stall_limit", e.stall_limit}}},
            {"penalty",
             {{"lambda", c.penalty.lambda},
              {"exponent", c.penalty.exponent},
              {"feasibility_tol", c.penalty.feasibility_tol}}},
            {"success",
             {{"test_function_tol", c.success.test_function_tol}, {"constrained_tol", c.success.constrained_tol}}},
            {"output", {{"dir", c.output.dir}, {"format", to_string(c.output.format)}}}};
}

void apply_json(SuiteConfig& c, const json& j)
{
    try {
        only_keys(j, "suite",
                  {"problems", "seeds", "root_seed", "stop_at_target", "threads", "de", "es", "penalty", "success",
                   "output"});
        take(j, "problems", c.problems);
        take_count(j, "seeds", c.seeds);
        if (j.contains("root_seed")) {
            if (!j.at("root_seed").is_number_unsigned())
                throw ConfigError("'root_seed' must be a non-negative integer");
            c.root_seed = j.at("root_seed").get<std::uint64_t>();
        }
        take(j, "stop_at_target", c.stop_at_target);
        take_count(j, "threads", c.threads);
        if (j.contains("de"))
            apply_de(c.de, j.at("de"), "de");
        if (j.contains("es")) {
            const json& e = j.at("es");
            only_keys(e, "es",
                      {"scouts", "levy", "local_de", "alternate_cr", "region_radius", "radius_decay", "min_radius",
                       "improvement_tol", "max_evals", "stall_limit"});
            take_count(e, "scouts", c.es.scouts);
            if (e.contains("levy")) {
                const json& l = e.at("levy");
                only_keys(l, "es.levy", {"beta", "alpha", "step_scale"});
                take(l, "beta", c.es.levy.beta);
                take(l, "alpha", c.es.levy.alpha);
                take(l, "step_scale", c.es.levy.step_scale);
            }
            if (e.contains("local_de"))
                apply_de(c.es.local_de, e.at("local_de"), "es.local_de");
            take(e, "alternate_cr", c.es.alternate_cr);
            take(e, "region_radius", c.es.region_radius);
            take(e, "radius_decay", c.es.radius_decay);
            take(e, "min_radius", c.es.min_radius);
            take(e, "improvement_tol", c.es.improvement_tol);
            take_count(e, "max_evals", c.es.max_evals);
            take_count(e, "stall_limit", c.es.stall_limit);
        }
        if (j.contains("penalty")) {
            const json& p = j.at("penalty");
            only_keys(p, "penalty", {"lambda", "exponent", "feasibility_tol"});
            take(p, "lambda", c.penalty.lambda);
            take(p, "exponent", c.penalty.exponent);
            take(p, "feasibility_tol", c.penalty.feasibility_tol);
        }
        if (j.contains("success")) {
            const json& s = j.at("success");
            only_keys(s, "success", {"test_function_tol", "constrained_tol"});
            take(s, "test_function_tol", c.success.test_function_tol);
            take(s, "constrained_tol", c.success.constrained_tol);
        }
        if (j.contains("output")) {
            const json& o = j.at("output");
            only_keys(o, "output", {"dir", "format"});
            take(o, "dir", c.output.dir);
            if (o.contains("format"))
                c.output.format = report_format_from(o.at("format").get<std::string>());
        }
    }
    catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
}

SuiteConfig load_suite_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    }
    catch (const json::parse_error& e) {
        throw ConfigError("cannot parse '" + path + "': " + e.what());
    }
    SuiteConfig cfg;
    apply_json(cfg, j);
    return cfg;
}

json to_json(const RunRecord& r)
{
    return {{"problem", r.problem},
            {"algorithm", to_string(r.algorithm)},
            {"seed", r.seed},
            {"rng_seed", r.rng_seed},
            {"best_raw", finite_or_null(r.best_raw)},
            {"best_penalized", finite_or_null(r.best_penalized)},
            {"feasible", r.feasible},
            {"evals_to_target", opt(r.evals_to_target)},
            {"evals_used", r.evals_used},
            {"wall_time", r.wall_time},
            {"error", r.error}};
}

RunRecord record_from_json(const json& j)
{
    RunRecord r;
    r.problem = j.at("problem").get<std::string>();
    r.algorithm = algorithm_from(j.at("algorithm").get<std::string>());
    r.seed = j.at("seed").get<std::size_t>();
    r.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    r.best_raw = double_or_inf(j.at("best_raw"));
    r.best_penalized = double_or_inf(j.at("best_penalized"));
    r.feasible = j.at("feasible").get<bool>();
    r.evals_to_target = opt_from<std::size_t>(j.at("evals_to_target"));
    r.evals_used = j.at("evals_used").get<std::size_t>();
    r.wall_time = j.at("wall_time").get<double>();
    r.error = j.value("error", std::string());
    return r;
}

std::string csv_header()
{
    return "problem,algorithm,seed,rng_seed,best_raw,best_penalized,feasible,evals_to_target,evals_used,wall_time,"
           "error";
}

std::string to_csv_row(const RunRecord& r)
{
    std::ostringstream os;
    os << csv_field(r.problem) << ',' << to_string(r.algorithm) << ',' << r.seed << ',' << r.rng_seed << ','
       << num(r.best_raw) << ',' << num(r.best_penalized) << ',' << (r.feasible ? "true" : "false") << ','
       << (r.evals_to_target ? std::to_string(*r.evals_to_target) : std::string()) << ',' << r.evals_used << ','
       << num(r.wall_time) << ',' << csv_field(r.error);
    return os.str();
}

} // namespace eagle
