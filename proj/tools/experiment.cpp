// SPDX-License-Identifier: MIT
#include "experiment.hpp"

#include "nlrta/datasets.hpp"
#include "nlrta/dten.hpp"
#include "nlrta/nlrt.hpp"
#include "nlrta/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace nlrta::experiment {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const char* dataset_name(DatasetKind k) {
    switch (k) {
        case DatasetKind::Hilbert:
            return "hilbert";
        case DatasetKind::Gaussian:
            return "gaussian";
        case DatasetKind::File:
            return "file";
    }
    return "";
}

const char* format_name(Format f) { return f == Format::Tucker ? "tucker" : "tt"; }

const char* method_name(Method m) {
    switch (m) {
        case Method::Plain:
            return "plain";
        case Method::Alternating:
            return "alternating";
        case Method::Nlrt:
            return "nlrt";
    }
    return "";
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

Matrix as_2d(const DenseTensor& t, const std::string& name) {
    if (t.ndims() != 2) throw FormatError("decomposition part '" + name + "' is not 2-D");
    return t.as_matrix(t.shape()[0], t.shape()[1]);
}

DenseTensor as_tensor(const Matrix& m) {
    return DenseTensor({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())},
                       std::vector<double>(m.data(), m.data() + m.size()));
}

void write_manifest(const fs::path& dir, const json& manifest) {
    std::ofstream out(dir / "manifest.json");
    if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
    out << manifest.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + (dir / "manifest.json").string());
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

json trace_summary(const ConvergenceTrace& trace) {
    const std::vector<double> times = iteration_times(trace);
    return {{"iterations_run", trace.rows.size()},
            {"solver_seconds", trace.empty() ? 0.0 : trace.back().elapsed_s},
            {"median_iteration_seconds", times.empty() ? 0.0 : median(times)}};
}

void write_trace(const ConvergenceTrace& trace, const fs::path& path, bool timing) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    trace.write_csv(out, timing);
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

ExitCode exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ArgumentError*>(&e) ||
        dynamic_cast<const ShapeError*>(&e)) {
        return ExitCode::Config;
    }
    if (dynamic_cast<const IoError*>(&e)) return ExitCode::Io;
    if (dynamic_cast<const NumericalError*>(&e)) return ExitCode::Numerical;
    return ExitCode::Failure;
}

void ExperimentConfig::validate() const {
    if (ranks.empty()) throw ConfigError("ranks must not be empty");
    for (std::size_t r : ranks) {
        if (r == 0) throw ConfigError("ranks must be positive");
    }
    if (method != Method::Plain && iterations == 0) throw ConfigError("iterations must be at least 1");
    if (method == Method::Nlrt && format != Format::Tucker) throw ConfigError("NLRT works in the Tucker format only");
    if (method == Method::Nlrt && strategy.kind != TruncationKind::Deterministic) {
        throw ConfigError("NLRT uses deterministic truncation only");
    }
    switch (strategy.kind) {
        case TruncationKind::Deterministic:
            break;
        case TruncationKind::HMT:
            if (strategy.k == 0) throw ConfigError("HMT needs --sketch-k >= 1");
            break;
        case TruncationKind::Tropp:
            if (strategy.k == 0) throw ConfigError("Tropp needs --sketch-k >= 1");
            if (strategy.l < strategy.k) throw ConfigError("Tropp needs --cotail-l >= --sketch-k");
            break;
    }
    const std::size_t max_rank = *std::max_element(ranks.begin(), ranks.end());
    if (strategy.kind != TruncationKind::Deterministic && strategy.k < max_rank) {
        throw ConfigError("sketch size k=" + std::to_string(strategy.k) + " is below the largest rank " +
                          std::to_string(max_rank));
    }
    if (stop_tolerance && !(*stop_tolerance > 0.0)) throw ConfigError("stop tolerance must be positive");
    if (dataset.kind == DatasetKind::File && dataset.path.empty()) throw ConfigError("dataset path is empty");
    if (dataset.kind == DatasetKind::Gaussian && dataset.n < 2) throw ConfigError("Gaussian grid needs n >= 2");
    if (dataset.kind == DatasetKind::Hilbert && dataset.shape.empty()) throw ConfigError("Hilbert shape is empty");
}

TruncationKind parse_svd_kind(const std::string& name) {
    if (name == "det") return TruncationKind::Deterministic;
    if (name == "hmt") return TruncationKind::HMT;
    if (name == "tropp") return TruncationKind::Tropp;
    throw ConfigError("unknown svd kind '" + name + "' (expected det, hmt, tropp)");
}

std::string svd_kind_name(TruncationKind kind) {
    switch (kind) {
        case TruncationKind::Deterministic:
            return "det";
        case TruncationKind::HMT:
            return "hmt";
        case TruncationKind::Tropp:
            return "tropp";
    }
    return "";
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("not a list of positive integers: '" + text + "'");
        }
        if (used != item.size() || item.empty() || item[0] == '-' || v == 0) {
            throw ConfigError("not a list of positive integers: '" + text + "'");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw ConfigError("empty list: '" + text + "'");
    return out;
}

fs::path default_output_dir() {
    if (const char* env = std::getenv("NLRTA_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

json to_json(const ExperimentConfig& c) {
    json dataset = {{"kind", dataset_name(c.dataset.kind)}};
    switch (c.dataset.kind) {
        case DatasetKind::Hilbert:
            dataset["shape"] = c.dataset.shape;
            break;
        case DatasetKind::Gaussian:
            dataset["n"] = c.dataset.n;
            dataset["a"] = c.dataset.a;
            break;
        case DatasetKind::File:
            dataset["path"] = c.dataset.path;
            break;
    }
    return {{"dataset", dataset},
            {"format", format_name(c.format)},
            {"method", method_name(c.method)},
            {"ranks", c.ranks},
            {"strategy",
             {{"svd", svd_kind_name(c.strategy.kind)},
              {"sketch_k", c.strategy.k},
              {"power", c.strategy.p},
              {"cotail_l", c.strategy.l}}},
            {"seed", c.strategy.seed},
            {"iterations", c.iterations},
            {"stop_tolerance", c.stop_tolerance ? json(*c.stop_tolerance) : json(nullptr)},
            {"check_bounds", c.check_bounds},
            {"output",
             {{"dir", c.output.dir.string()},
              {"trace", c.output.trace},
              {"report", c.output.report},
              {"decomposition", c.output.decomposition},
              {"timing", c.output.timing}}}};
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (j.contains("dataset")) {
        const json& d = j.at("dataset");
        const auto kind = get_or<std::string>(d, "kind", dataset_name(c.dataset.kind));
        if (kind == "hilbert") {
            c.dataset.kind = DatasetKind::Hilbert;
        } else if (kind == "gaussian") {
            c.dataset.kind = DatasetKind::Gaussian;
        } else if (kind == "file") {
            c.dataset.kind = DatasetKind::File;
        } else {
            throw ConfigError("unknown dataset kind '" + kind + "'");
        }
        c.dataset.shape = get_or<Shape>(d, "shape", c.dataset.shape);
        c.dataset.n = get_or<std::size_t>(d, "n", c.dataset.n);
        c.dataset.a = get_or<double>(d, "a", c.dataset.a);
        c.dataset.path = get_or<std::string>(d, "path", c.dataset.path);
    }
    const auto format = get_or<std::string>(j, "format", format_name(c.format));
    if (format == "tucker") {
        c.format = Format::Tucker;
    } else if (format == "tt") {
        c.format = Format::TT;
    } else {
        throw ConfigError("unknown format '" + format + "'");
    }
    const auto method = get_or<std::string>(j, "method", method_name(c.method));
    if (method == "plain") {
        c.method = Method::Plain;
    } else if (method == "alternating") {
        c.method = Method::Alternating;
    } else if (method == "nlrt") {
        c.method = Method::Nlrt;
    } else {
        throw ConfigError("unknown method '" + method + "'");
    }
    c.ranks = get_or<std::vector<std::size_t>>(j, "ranks", c.ranks);
    if (j.contains("strategy")) {
        const json& s = j.at("strategy");
        c.strategy.kind = parse_svd_kind(get_or<std::string>(s, "svd", svd_kind_name(c.strategy.kind)));
        c.strategy.k = get_or<std::size_t>(s, "sketch_k", c.strategy.k);
        c.strategy.p = get_or<std::size_t>(s, "power", c.strategy.p);
        c.strategy.l = get_or<std::size_t>(s, "cotail_l", c.strategy.l);
    }
    c.strategy.seed = get_or<std::uint64_t>(j, "seed", c.strategy.seed);
    c.iterations = get_or<std::size_t>(j, "iterations", c.iterations);
    if (j.contains("stop_tolerance")) {
        c.stop_tolerance = j.at("stop_tolerance").is_null() ? std::nullopt
                                                            : std::optional<double>(get_or<double>(j, "stop_tolerance", 0.0));
    }
    c.check_bounds = get_or<bool>(j, "check_bounds", c.check_bounds);
    if (j.contains("output")) {
        const json& o = j.at("output");
        c.output.dir = get_or<std::string>(o, "dir", c.output.dir.string());
        c.output.trace = get_or<std::string>(o, "trace", c.output.trace);
        c.output.report = get_or<std::string>(o, "report", c.output.report);
        c.output.decomposition = get_or<std::string>(o, "decomposition", c.output.decomposition);
        c.output.timing = get_or<bool>(o, "timing", c.output.timing);
    }
    return c;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    try {
        return config_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed config " + path.string() + ": " + e.what());
    }
}

DenseTensor make_dataset(const DatasetSpec& spec) {
    switch (spec.kind) {
        case DatasetKind::Hilbert:
            return hilbert_tensor(spec.shape);
        case DatasetKind::Gaussian:
            return gaussian_mixture_tensor(standard_mixture(spec.n, spec.a));
        case DatasetKind::File:
            return load_tensor(spec.path);
    }
    throw ConfigError("unknown dataset kind");
}

json to_json(const QualityReport& q) {
    json j = {{"rel_err_frobenius", q.rel_err_frobenius},
              {"rel_err_chebyshev", q.rel_err_chebyshev},
              {"r_squared", std::isfinite(q.r_squared) ? json(q.r_squared) : json(nullptr)},
              {"negativity",
               {{"frobenius", q.negativity.frobenius},
                {"chebyshev", q.negativity.chebyshev},
                {"fraction", q.negativity.fraction}}}};
    if (q.ssim_bandwise_mean) j["ssim_bandwise_mean"] = *q.ssim_bandwise_mean;
    return j;
}

void save_decomposition(const TuckerDecomposition& t, const fs::path& dir) {
    t.validate();
    ensure_dir(dir);
    json parts = json::array();
    save_tensor(t.core, dir / "core.dten");
    parts.push_back({{"role", "core"}, {"file", "core.dten"}});
    for (std::size_t k = 0; k < t.factors.size(); ++k) {
        const std::string name = "factor_" + std::to_string(k + 1) + ".dten";
        save_tensor(as_tensor(t.factors[k]), dir / name);
        parts.push_back({{"role", "factor"}, {"mode", k + 1}, {"file", name}});
    }
    write_manifest(dir, {{"format", "tucker"},
                         {"shape", t.shape()},
                         {"ranks", t.ranks()},
                         {"parts", parts},
                         {"version", kVersion}});
}

void save_decomposition(const TTDecomposition& t, const fs::path& dir) {
    t.validate();
    ensure_dir(dir);
    json parts = json::array();
    save_tensor(as_tensor(t.first), dir / "core_1.dten");
    parts.push_back({{"role", "first"}, {"mode", 1}, {"file", "core_1.dten"}});
    for (std::size_t k = 0; k < t.cores.size(); ++k) {
        const std::string name = "core_" + std::to_string(k + 2) + ".dten";
        save_tensor(t.cores[k], dir / name);
        parts.push_back({{"role", "core"}, {"mode", k + 2}, {"file", name}});
    }
    const std::string last = "core_" + std::to_string(t.ndims()) + ".dten";
    save_tensor(as_tensor(t.last), dir / last);
    parts.push_back({{"role", "last"}, {"mode", t.ndims()}, {"file", last}});
    write_manifest(dir, {{"format", "tt"},
                         {"shape", t.shape()},
                         {"ranks", t.ranks()},
                         {"parts", parts},
                         {"version", kVersion}});
}

DenseTensor load_decomposition(const fs::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw IoError("cannot read " + (dir / "manifest.json").string());
    json m;
    try {
        m = json::parse(in);
        const auto format = m.at("format").get<std::string>();
        const json& parts = m.at("parts");
        if (format == "tucker") {
            TuckerDecomposition t;
            t.factors.resize(parts.size() - 1);
            for (const json& p : parts) {
                const DenseTensor part = load_tensor(dir / p.at("file").get<std::string>());
                if (p.at("role") == "core") {
                    t.core = part;
                } else {
                    const auto mode = p.at("mode").get<std::size_t>();
                    if (mode < 1 || mode > t.factors.size()) throw FormatError("manifest factor mode out of range");
                    t.factors[mode - 1] = as_2d(part, p.at("file").get<std::string>());
                }
            }
            return tucker_reconstruct(t);
        }
        if (format == "tt") {
            TTDecomposition t;
            if (parts.size() < 2) throw FormatError("TT manifest needs at least two parts");
            t.cores.resize(parts.size() - 2);
            for (const json& p : parts) {
                const DenseTensor part = load_tensor(dir / p.at("file").get<std::string>());
                const auto role = p.at("role").get<std::string>();
                const auto mode = p.at("mode").get<std::size_t>();
                if (role == "first") {
                    t.first = as_2d(part, "first");
                } else if (role == "last") {
                    t.last = as_2d(part, "last");
                } else {
                    if (mode < 2 || mode > parts.size() - 1) throw FormatError("manifest core mode out of range");
                    t.cores[mode - 2] = part;
                }
            }
            return tt_reconstruct(t);
        }
        throw FormatError("unknown decomposition format '" + format + "'");
    } catch (const json::exception& e) {
        throw FormatError("malformed manifest in " + dir.string() + ": " + e.what());
    }
}

RunResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const DenseTensor x = make_dataset(config.dataset);
    const std::size_t d = x.ndims();
    const std::size_t want = config.format == Format::Tucker ? d : d - 1;
    if (config.format == Format::TT && d < 2) throw ConfigError("TT format needs a tensor of order >= 2");
    if (config.ranks.size() != want) {
        throw ConfigError("expected " + std::to_string(want) + " ranks for a " + std::to_string(d) + "-D tensor in " +
                          format_name(config.format) + " format, got " + std::to_string(config.ranks.size()));
    }

    const fs::path dir = config.output.dir.empty() ? default_output_dir() : config.output.dir;
    ensure_dir(dir);
    RunResult out;
    out.trace_path = dir / config.output.trace;
    out.report_path = dir / config.output.report;
    out.decomposition_dir = dir / config.output.decomposition;

    SolverOptions options;
    options.iterations = config.method == Method::Plain ? 1 : config.iterations;
    options.stop_tolerance = config.stop_tolerance;
    options.check_bounds = config.check_bounds;

    json extra = json::object();
    DenseTensor approximation;
    if (config.method == Method::Nlrt) {
        NlrtResult r = nlrt_iterate(NlrtState::from_input(x, config.ranks), x, options);
        const TuckerDecomposition aux = nlrt_auxiliary(r.state);
        approximation = tucker_reconstruct(aux);
        save_decomposition(aux, out.decomposition_dir);
        json components = json::array();
        for (std::size_t k = 0; k < r.traces.size(); ++k) {
            const fs::path p = dir / ("trace_component_" + std::to_string(k + 1) + ".csv");
            write_trace(r.traces[k], p, config.output.timing);
            components.push_back({{"component", k + 1},
                                  {"trace", p.filename().string()},
                                  {"quality", to_json(quality_report(x, r.state.components[k]))}});
        }
        extra["nlrt_components"] = components;
        out.trace = std::move(r.traces.front());
    } else if (config.method == Method::Plain) {
        Stopwatch clock;
        clock.start();
        if (config.format == Format::Tucker) {
            const TuckerDecomposition t = sthosvd(x, config.ranks, config.strategy);
            approximation = tucker_reconstruct(t);
            clock.stop();
            save_decomposition(t, out.decomposition_dir);
        } else {
            const TTDecomposition t = ttsvd(x, config.ranks, config.strategy);
            approximation = tt_reconstruct(t);
            clock.stop();
            save_decomposition(t, out.decomposition_dir);
        }
        out.trace.rows.push_back(
            measure_iterate(1, approximation, x, frobenius_norm(x), chebyshev_norm(x), clock.seconds()));
    } else if (config.format == Format::Tucker) {
        TuckerApproximation r = nsthosvd(x, config.ranks, options, config.strategy);
        save_decomposition(r.decomposition, out.decomposition_dir);
        approximation = std::move(r.approximation);
        out.trace = std::move(r.trace);
    } else {
        TTApproximation r = nttsvd(x, config.ranks, options, config.strategy);
        save_decomposition(r.decomposition, out.decomposition_dir);
        approximation = std::move(r.approximation);
        out.trace = std::move(r.trace);
    }

    write_trace(out.trace, out.trace_path, config.output.timing);
    out.quality = quality_report(x, approximation);
    out.report = {{"version", kVersion},
                  {"config", to_json(config)},
                  {"strategy_label", config.strategy.label()},
                  {"shape", x.shape()},
                  {"quality", to_json(out.quality)},
                  {"timing", config.output.timing ? trace_summary(out.trace) : json(nullptr)},
                  {"iterations_run", out.trace.rows.size()},
                  {"artifacts",
                   {{"trace", out.trace_path.filename().string()},
                    {"decomposition", out.decomposition_dir.filename().string()}}}};
    if (!extra.empty()) out.report.update(extra);
    std::ofstream rep(out.report_path);
    if (!rep) throw IoError("cannot write " + out.report_path.string());
    rep << out.report.dump(2) << '\n';
    if (!rep) throw IoError("write failed: " + out.report_path.string());
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) throw ArgumentError("median of an empty sample");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    double m = values[mid];
    if (values.size() % 2 == 0) {
        m = 0.5 * (m + *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    return m;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ArgumentError("slope fit needs two or more paired points");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ArgumentError("log-log fit needs positive values");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw ArgumentError("slope fit needs distinct x values");
    return sxy / sxx;
}

BenchResult run_bench(const BenchConfig& config) {
    if (config.repeats == 0) throw ConfigError("bench needs at least one timed iteration");
    if (config.sizes.empty() || config.strategies.empty()) throw ConfigError("bench needs sizes and strategies");
    const std::size_t d = config.format == Format::Tucker ? config.ranks.size() : config.ranks.size() + 1;
    BenchResult out;
    for (const TruncationStrategy& s : config.strategies) {
        std::vector<double> ns;
        std::vector<double> ts;
        for (std::size_t n : config.sizes) {
            const DenseTensor x = hilbert_tensor(Shape(d, n));
            SolverOptions options;
            options.iterations = config.repeats + 1;
            const ConvergenceTrace trace = config.format == Format::Tucker ? nsthosvd(x, config.ranks, options, s).trace
                                                                           : nttsvd(x, config.ranks, options, s).trace;
            std::vector<double> times = iteration_times(trace);
            times.erase(times.begin());
            BenchPoint p{s.label(), n, times, median(times)};
            ns.push_back(static_cast<double>(n));
            ts.push_back(p.median);
            out.points.push_back(std::move(p));
        }
        out.slopes.emplace_back(s.label(), ns.size() >= 2 ? loglog_slope(ns, ts) : std::nan(""));
    }
    return out;
}

void write_bench_csv(const BenchResult& result, std::ostream& out) {
    char buf[64];
    out << "strategy,n,repeats,median_s,min_s,max_s\n";
    for (const BenchPoint& p : result.points) {
        const auto [lo, hi] = std::minmax_element(p.samples.begin(), p.samples.end());
        out << '"' << p.strategy << "\"," << p.n << ',' << p.samples.size();
        for (double v : {p.median, *lo, *hi}) {
            std::snprintf(buf, sizeof buf, ",%.9g", v);
            out << buf;
        }
        out << '\n';
    }
}

void write_slopes_csv(const BenchResult& result, std::ostream& out) {
    char buf[64];
    out << "strategy,loglog_slope\n";
    for (const auto& [label, slope] : result.slopes) {
        std::snprintf(buf, sizeof buf, "%.4f", slope);
        out << '"' << label << "\"," << buf << '\n';
    }
}

}  // namespace nlrta::experiment
