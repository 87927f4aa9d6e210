#include "eagle/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace eagle {

std::string_view to_string(Algorithm a) noexcept
{
    return a == Algorithm::de ? "de" : "es";
}

std::string_view to_string(ReportFormat f) noexcept
{
    switch (f) {
    case ReportFormat::table: return "table";
    case ReportFormat::csv: return "csv";
    case ReportFormat::json: return "json";
    }
    return "table";
}

Algorithm algorithm_from(std::string_view s)
{
    if (s == "de")
        return Algorithm::de;
    if (s == "es")
        return Algorithm::es;
    throw ConfigError("unknown algorithm '" + std::string(s) + "'");
}

ReportFormat report_format_from(std::string_view s)
{
    if (s == "table")
        return ReportFormat::table;
    if (s == "csv")
        return ReportFormat::csv;
    if (s == "json")
        return ReportFormat::json;
    throw ConfigError("unknown format '" + std::string(s) + "' (table, csv, json)");
}

Target SuccessRule::target_for(const Problem& problem) const
{
    if (!problem.known_best_value)
        throw ConfigError("problem '" + problem.name + "' has no known best value to aim at");
    const bool constrained = !problem.constraints.empty();
    return Target{*problem.known_best_value, constrained ? constrained_tol : test_function_tol, constrained};
}

void SuiteConfig::validate() const
{
    if (seeds < 1)
        throw ConfigError("seeds must be >= 1");
    if (problems.empty())
        throw ConfigError("no problems selected");
    if (!(success.test_function_tol >= 0.0) || !(success.constrained_tol >= 0.0))
        throw ConfigError("success tolerances must be >= 0");
    for (std::size_t i = 0; i < problems.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k)
            if (problems[k] == problems[i])
                throw ConfigError("problem '" + problems[i] + "' listed twice");
        Problem p;
        try {
            p = make_problem(problems[i]);
        }
        catch (const std::exception& e) {
            throw ConfigError("unresolvable problem '" + problems[i] + "': " + e.what());
        }
        success.target_for(p);
        try {
            de.validate(p.dim());
            es.validate(p.dim());
            penalty.validate();
        }
        catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
}

std::optional<std::size_t> evals_to_target(std::span<const TracePoint> trace, double target, double tol,
                                           bool require_feasible)
{
    for (const TracePoint& t : trace)
        if (t.best <= target + tol && (t.feasible || !require_feasible))
            return t.evals;
    return std::nullopt;
}

std::optional<double> median_of(std::vector<double> values)
{
    if (values.empty())
        return std::nullopt;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double m = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    if (!std::isfinite(m))
        return std::nullopt;
    return m;
}

RunRecord run_one(const Problem& problem, const std::string& id, Algorithm algorithm, std::size_t seed,
                  const SuiteConfig& cfg)
{
    RunRecord rec;
    rec.problem = id;
    rec.algorithm = algorithm;
    rec.seed = seed;
    rec.rng_seed = mix_seed(cfg.root_seed, seed);

    const Target target = cfg.success.target_for(problem);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Rng rng(rec.rng_seed);
        RunResult res;
        if (algorithm == Algorithm::de) {
            DeConfig de = cfg.de;
            de.target = cfg.stop_at_target ? std::optional<Target>(target) : std::nullopt;
            res = run_de(problem, de, cfg.penalty, rng);
        }
        else {
            EsConfig es = cfg.es;
            es.target = cfg.stop_at_target ? std::optional<Target>(target) : std::nullopt;
            res = run_eagle(problem, es, cfg.penalty, rng);
        }
        rec.best_raw = res.best_raw;
        rec.best_penalized = res.best_value;
        rec.feasible = res.feasible;
        rec.evals_used = res.evals_used;
        if (std::isfinite(res.best_value))
            rec.evals_to_target = evals_to_target(res.trace, target.value, target.tolerance, target.require_feasible);
    }
    catch (const std::exception& e) {
        rec.best_raw = rec.best_penalized = std::numeric_limits<double>::infinity();
        rec.feasible = false;
        rec.evals_to_target.reset();
        rec.error = e.what();
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

namespace {

AlgorithmSummary summarize(const std::vector<const RunRecord*>& runs)
{
    AlgorithmSummary s;
    s.runs = runs.size();
    std::vector<double> evals;
    double sum = 0.0;
    for (const RunRecord* r : runs) {
        if (r->evals_to_target) {
            ++s.successes;
            evals.push_back(static_cast<double>(*r->evals_to_target));
            sum += static_cast<double>(*r->evals_to_target);
        }
        else {
            evals.push_back(std::numeric_limits<double>::infinity());
        }
        if (r->feasible && std::isfinite(r->best_raw) && (!s.best_raw || r->best_raw < *s.best_raw))
            s.best_raw = r->best_raw;
    }
    s.median_evals = median_of(evals);
    if (s.successes > 0)
        s.mean_evals = sum / static_cast<double>(s.successes);
    return s;
}

std::string utc_now()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Job {
    std::size_t problem;
    Algorithm algorithm;
    std::size_t seed;
};

} // namespace

Report aggregate(const SuiteConfig& cfg, std::span<const RunRecord> records)
{
    Report report;
    report.config = to_json(cfg);
    std::vector<double> ratios;
    for (const std::string& id : cfg.problems) {
        std::vector<const RunRecord*> de, es;
        for (const RunRecord& r : records) {
            if (r.problem != id)
                continue;
            (r.algorithm == Algorithm::de ? de : es).push_back(&r);
        }
        ProblemSummary p;
        p.problem = id;
        p.de = summarize(de);
        p.es = summarize(es);
        if (p.de.median_evals && p.es.median_evals && *p.de.median_evals > 0.0) {
            p.ratio = *p.es.median_evals / *p.de.median_evals;
            ratios.push_back(*p.ratio);
        }
        report.problems.push_back(std::move(p));
    }
    report.median_ratio = median_of(ratios);
    return report;
}

Report run_suite(const SuiteConfig& cfg, const RecordSink& sink)
{
    cfg.validate();

    std::vector<Problem> problems;
    for (const std::string& id : cfg.problems)
        problems.push_back(make_problem(id));

    std::vector<Job> jobs;
    for (std::size_t p = 0; p < problems.size(); ++p)
        for (Algorithm a : {Algorithm::de, Algorithm::es})
            for (std::size_t s = 0; s < cfg.seeds; ++s)
                jobs.push_back({p, a, s});

    std::ofstream csv, jsonl;
    const std::filesystem::path dir = cfg.output.dir;
    if (!cfg.output.dir.empty()) {
        std::filesystem::create_directories(dir);
        csv.open(dir / "runs.csv");
        jsonl.open(dir / "runs.jsonl");
        if (!csv || !jsonl)
            throw ConfigError("cannot write to output directory '" + cfg.output.dir + "'");
        csv << "# format=eagle-runs version=" << runs_format_version << '\n' << csv_header() << '\n';
        nlohmann::json header{{"format", "eagle-runs"}, {"version", runs_format_version},
                              {"tool_version", tool_version}, {"root_seed", cfg.root_seed}, {"seeds", cfg.seeds}};
        jsonl << header.dump() << '\n';
    }

    const std::string started = utc_now();
    std::vector<std::optional<RunRecord>> done(jobs.size());
    std::size_t flushed = 0;
    std::mutex mu;
    std::exception_ptr failure;

    // Emits the completed prefix in canonical order. Called under `mu`.
    auto flush = [&] {
        while (flushed < done.size() && done[flushed]) {
            const RunRecord& r = *done[flushed];
            if (csv.is_open()) {
                csv << to_csv_row(r) << '\n' << std::flush;
                jsonl << to_json(r).dump() << '\n' << std::flush;
            }
            if (sink)
                sink(r);
            ++flushed;
        }
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size())
                return;
            const Job& job = jobs[k];
            RunRecord rec = run_one(problems[job.problem], cfg.problems[job.problem], job.algorithm, job.seed, cfg);
            std::lock_guard lock(mu);
            if (failure)
                return;
            done[k] = std::move(rec);
            try {
                flush();
            }
            catch (...) {
                failure = std::current_exception();
                next = jobs.size();
            }
        }
    };

    std::size_t threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    if (threads <= 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<RunRecord> records;
    records.reserve(done.size());
    for (auto& r : done)
        records.push_back(std::move(*r));

    Report report = aggregate(cfg, records);
    report.started_at = started;
    report.finished_at = utc_now();

    if (!cfg.output.dir.empty()) {
        std::ofstream(dir / "report.json") << render_report(report, ReportFormat::json);
        std::ofstream(dir / "report.txt") << render_report(report, ReportFormat::table);
    }
    return report;
}

} // namespace eagle
