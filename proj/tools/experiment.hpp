// SPDX-License-Identifier: MIT
#pragma once

#include "nlrta/error.hpp"
#include "nlrta/metrics.hpp"
#include "nlrta/svd.hpp"
#include "nlrta/tensor.hpp"
#include "nlrta/tensor_train.hpp"
#include "nlrta/trace.hpp"
#include "nlrta/tucker.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <utility>
#include <string>
#include <vector>

namespace nlrta::experiment {

/// Invalid or inconsistent experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class ExitCode : int { Ok = 0, Failure = 1, Config = 2, Io = 3, Numerical = 4 };

/// Maps an exception thrown by the library or this module to an exit status.
[[nodiscard]] ExitCode exit_code_for(const std::exception& e) noexcept;

enum class DatasetKind { Hilbert, Gaussian, File };
enum class Format { Tucker, TT };
enum class Method { Plain, Alternating, Nlrt };

struct DatasetSpec {
    DatasetKind kind = DatasetKind::Hilbert;
    Shape shape{128, 128, 128};  ///< Hilbert only
    std::size_t n = 64;          ///< Gaussian only
    double a = 1.0;              ///< Gaussian only
    std::string path;            ///< File only
};

struct OutputSpec {
    std::filesystem::path dir;
    std::string trace = "trace.csv";
    std::string report = "report.json";
    std::string decomposition = "decomposition";
    /// With false the trace's elapsed_s column is written as 0 so that runs
    /// with equal configs produce byte-identical files.
    bool timing = true;
};

struct ExperimentConfig {
    DatasetSpec dataset;
    Format format = Format::Tucker;
    Method method = Method::Alternating;
    std::vector<std::size_t> ranks{3, 2, 4};
    TruncationStrategy strategy;
    std::size_t iterations = 250;
    std::optional<double> stop_tolerance;
    bool check_bounds = false;
    OutputSpec output;

    /// Checks everything that does not depend on the loaded data.
    void validate() const;
};

[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& config);
/// Missing keys keep the defaults of `base`. Throws ConfigError.
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// "det", "hmt", "tropp" <-> TruncationKind. Throws ConfigError.
[[nodiscard]] TruncationKind parse_svd_kind(const std::string& name);
[[nodiscard]] std::string svd_kind_name(TruncationKind kind);

/// Parses "3,2,4". Throws ConfigError.
[[nodiscard]] std::vector<std::size_t> parse_size_list(const std::string& text);

/// Output directory used when a config names none: $NLRTA_OUTPUT_DIR, else ".".
[[nodiscard]] std::filesystem::path default_output_dir();

[[nodiscard]] DenseTensor make_dataset(const DatasetSpec& spec);

[[nodiscard]] nlohmann::json to_json(const QualityReport& q);

struct RunResult {
    ConvergenceTrace trace;
    QualityReport quality;
    nlohmann::json report;
    std::filesystem::path trace_path;
    std::filesystem::path report_path;
    std::filesystem::path decomposition_dir;
};

/// Loads or generates the data, runs the configured method, and writes the
/// trace CSV, report JSON, and decomposition directory.
[[nodiscard]] RunResult run_experiment(const ExperimentConfig& config);

/// Decomposition directory: one DTEN file per part plus manifest.json.
void save_decomposition(const TuckerDecomposition& t, const std::filesystem::path& dir);
void save_decomposition(const TTDecomposition& t, const std::filesystem::path& dir);
/// Reconstructs the full tensor from a directory written by save_decomposition.
[[nodiscard]] DenseTensor load_decomposition(const std::filesystem::path& dir);

struct BenchConfig {
    Format format = Format::Tucker;
    std::vector<std::size_t> ranks{3, 2, 4};
    std::vector<TruncationStrategy> strategies{TruncationStrategy::deterministic()};
    std::vector<std::size_t> sizes{32, 48, 64, 96};
    std::size_t repeats = 5;  ///< timed iterations per point, after one warm-up
};

struct BenchPoint {
    std::string strategy;
    std::size_t n = 0;
    std::vector<double> samples;  ///< per-iteration seconds, warm-up excluded
    double median = 0.0;
};

struct BenchResult {
    std::vector<BenchPoint> points;
    std::vector<std::pair<std::string, double>> slopes;  ///< per strategy, log-log fit over all sizes
};

/// Per-iteration wall times of the alternating-projection solver on Hilbert
/// cubes n x ... x n whose order matches the rank tuple.
[[nodiscard]] BenchResult run_bench(const BenchConfig& config);
/// Columns strategy,n,repeats,median_s,min_s,max_s.
void write_bench_csv(const BenchResult& result, std::ostream& out);
/// Columns strategy,loglog_slope.
void write_slopes_csv(const BenchResult& result, std::ostream& out);

[[nodiscard]] double median(std::vector<double> values);
/// Least-squares slope of log(y) against log(x).
[[nodiscard]] double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nlrta::experiment
