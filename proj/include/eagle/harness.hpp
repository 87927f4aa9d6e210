#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eagle/benchmarks.hpp"
#include "eagle/de.hpp"
#include "eagle/eagle_strategy.hpp"
#include "eagle/problem.hpp"

namespace eagle {

inline constexpr std::string_view tool_version = "1.0.0";
inline constexpr int runs_format_version = 1;
inline constexpr int report_format_version = 1;

/// Raised for anything wrong with a suite definition; the CLI maps it to a
/// nonzero exit code before any run starts.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Algorithm { de, es };
enum class ReportFormat { table, csv, json };

std::string_view to_string(Algorithm a) noexcept;
std::string_view to_string(ReportFormat f) noexcept;
Algorithm algorithm_from(std::string_view s);
ReportFormat report_format_from(std::string_view s);

/// What counts as "reached the solution".
struct SuccessRule {
    double test_function_tol = 1e-3; ///< absolute, on known_best_value
    double constrained_tol = 0.1;    ///< absolute, on known_best_value, feasibility required

    /// Throws ConfigError when the problem has no known best value.
    Target target_for(const Problem& problem) const;
};

struct OutputConfig {
    std::string dir; ///< empty: nothing written to disk
    ReportFormat format = ReportFormat::table;
};

struct SuiteConfig {
    std::vector<std::string> problems = problem_ids();
    std::size_t seeds = 20;
    std::uint64_t root_seed = 42;
    DeConfig de;
    EsConfig es;
    PenaltyConfig penalty;
    SuccessRule success;
    OutputConfig output;
    /// Runs stop as soon as they meet their target. Turning this off spends
    /// the full budget on every run.
    bool stop_at_target = true;
    std::size_t threads = 0; ///< 0: hardware concurrency

    /// Throws ConfigError.
    void validate() const;
};

struct RunRecord {
    std::string problem;
    Algorithm algorithm = Algorithm::de;
    std::size_t seed = 0;       ///< seed index in [0, S)
    std::uint64_t rng_seed = 0; ///< mix_seed(root_seed, seed)
    double best_raw = 0.0;
    double best_penalized = 0.0;
    bool feasible = false;
    std::optional<std::size_t> evals_to_target;
    std::size_t evals_used = 0;
    double wall_time = 0.0; ///< seconds
    std::string error;      ///< non-empty when the run threw

    bool operator==(const RunRecord&) const = default;
};

struct AlgorithmSummary {
    std::size_t runs = 0;
    std::size_t successes = 0;
    /// Failed runs count as +inf, so the median is absent once half the
    /// runs fail.
    std::optional<double> median_evals;
    std::optional<double> mean_evals; ///< over successful runs
    std::optional<double> best_raw;   ///< lowest raw value among feasible runs

    bool operator==(const AlgorithmSummary&) const = default;
};

struct ProblemSummary {
    std::string problem;
    AlgorithmSummary de;
    AlgorithmSummary es;
    std::optional<double> ratio; ///< median ES / median DE

    bool operator==(const ProblemSummary&) const = default;
};

struct Report {
    int version = report_format_version;
    std::string tool_version{eagle::tool_version};
    std::string started_at;
    std::string finished_at;
    nlohmann::json config; ///< the SuiteConfig that produced it
    std::vector<ProblemSummary> problems;
    std::optional<double> median_ratio; ///< over problems that have a ratio

    bool operator==(const Report&) const = default;
};

/// Smallest evals at which best <= target + tol (and the point is feasible
/// when required). Expects a non-increasing trace.
std::optional<std::size_t> evals_to_target(std::span<const TracePoint> trace, double target, double tol,
                                           bool require_feasible = false);

/// Median with +inf allowed; absent for an empty list or an infinite result.
std::optional<double> median_of(std::vector<double> values);

/// One deterministic run.
RunRecord run_one(const Problem& problem, const std::string& id, Algorithm algorithm, std::size_t seed,
                  const SuiteConfig& cfg);

/// Per-problem aggregates in the order of cfg.problems. Records may come in
/// any order.
Report aggregate(const SuiteConfig& cfg, std::span<const RunRecord> records);

using RecordSink = std::function<void(const RunRecord&)>;

/// Every (problem, algorithm, seed) run, possibly in parallel. Records reach
/// `sink` and the files under cfg.output.dir in canonical (problem,
/// algorithm, seed) order as soon as the prefix before them is complete.
/// Writes runs.csv, runs.jsonl, report.json and report.txt.
Report run_suite(const SuiteConfig& cfg, const RecordSink& sink = {});

std::string render_report(const Report& report, ReportFormat format);

/// Inverse of render_report(report, ReportFormat::json).
Report parse_report(std::string_view json_text);

// Serialization of configs and records. Config parsing overlays the given
// keys on the current values and rejects unknown keys with ConfigError.

nlohmann::json to_json(const SuiteConfig& cfg);
void apply_json(SuiteConfig& cfg, const nlohmann::json& j);
SuiteConfig load_suite_config(const std::string& path);

nlohmann::json to_json(const RunRecord& r);
RunRecord record_from_json(const nlohmann::json& j);
std::string csv_header();
std::string to_csv_row(const RunRecord& r);

} // namespace eagle
