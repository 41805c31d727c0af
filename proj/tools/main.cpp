// SPDX-License-Identifier: MIT
#include "experiment.hpp"

#include "nlrta/datasets.hpp"
#include "nlrta/dten.hpp"
#include "nlrta/version.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

namespace fs = std::filesystem;
namespace ex = nlrta::experiment;
using nlohmann::json;

// Flags shared by `approximate` and `nlrt`; each overrides the config file
// only when given on the command line.
struct RunFlags {
    std::string config;
    std::string input;
    std::string dataset;
    std::string shape;
    std::size_t n = 0;
    double a = 0.0;
    std::string format;
    std::string method;
    std::string ranks;
    std::string svd;
    std::size_t sketch_k = 0;
    std::size_t power = 0;
    std::size_t cotail_l = 0;
    std::size_t iters = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    bool check_bounds = false;
    bool no_timing = false;
    std::string output_dir;

    CLI::Option* opt_n = nullptr;
    CLI::Option* opt_a = nullptr;
    CLI::Option* opt_k = nullptr;
    CLI::Option* opt_p = nullptr;
    CLI::Option* opt_l = nullptr;
    CLI::Option* opt_iters = nullptr;
    CLI::Option* opt_seed = nullptr;
    CLI::Option* opt_tol = nullptr;
};

void add_run_flags(CLI::App* app, RunFlags& f, bool with_format) {
    app->add_option("--config", f.config, "JSON config file; flags override its values");
    app->add_option("--input", f.input, "DTEN tensor to approximate");
    app->add_option("--dataset", f.dataset, "Generated dataset: hilbert or gaussian")
        ->check(CLI::IsMember({"hilbert", "gaussian"}));
    app->add_option("--shape", f.shape, "Hilbert shape, e.g. 128,128,128");
    f.opt_n = app->add_option("--n", f.n, "Gaussian grid points per axis");
    f.opt_a = app->add_option("--a", f.a, "Gaussian half-width of the domain");
    if (with_format) {
        app->add_option("--format", f.format, "tucker or tt")->check(CLI::IsMember({"tucker", "tt"}));
        app->add_option("--method", f.method, "plain or alternating")->check(CLI::IsMember({"plain", "alternating"}));
        app->add_option("--svd", f.svd, "Rank truncation: det, hmt, tropp")->check(CLI::IsMember({"det", "hmt", "tropp"}));
        f.opt_k = app->add_option("--sketch-k", f.sketch_k, "Range sketch size k");
        f.opt_p = app->add_option("--power", f.power, "HMT power iterations p");
        f.opt_l = app->add_option("--cotail-l", f.cotail_l, "Tropp co-range sketch size l");
        f.opt_seed = app->add_option("--seed", f.seed, "Seed of the randomized truncations");
        app->add_flag("--check-bounds", f.check_bounds, "Verify the discarded-energy bound every iteration");
    }
    app->add_option("--ranks", f.ranks, "Rank tuple, e.g. 3,2,4");
    f.opt_iters = app->add_option("--iters", f.iters, "Number of iterations");
    f.opt_tol = app->add_option("--tol", f.tol, "Stop once negativity (Frobenius) is below this");
    app->add_flag("--no-timing", f.no_timing, "Write elapsed_s as 0 for byte-reproducible traces");
    app->add_option("--output-dir", f.output_dir, "Output directory (default: $NLRTA_OUTPUT_DIR or .)");
}

ex::ExperimentConfig build_config(const RunFlags& f, bool nlrt) {
    ex::ExperimentConfig c = f.config.empty() ? ex::ExperimentConfig{} : ex::load_config(f.config);
    if (!f.input.empty()) {
        c.dataset.kind = ex::DatasetKind::File;
        c.dataset.path = f.input;
    }
    if (!f.dataset.empty()) c.dataset.kind = f.dataset == "hilbert" ? ex::DatasetKind::Hilbert : ex::DatasetKind::Gaussian;
    if (!f.shape.empty()) c.dataset.shape = ex::parse_size_list(f.shape);
    if (f.opt_n->count()) c.dataset.n = f.n;
    if (f.opt_a->count()) c.dataset.a = f.a;
    if (!f.format.empty()) c.format = f.format == "tucker" ? ex::Format::Tucker : ex::Format::TT;
    if (!f.method.empty()) c.method = f.method == "plain" ? ex::Method::Plain : ex::Method::Alternating;
    if (!f.ranks.empty()) c.ranks = ex::parse_size_list(f.ranks);
    if (!f.svd.empty()) c.strategy.kind = ex::parse_svd_kind(f.svd);
    if (f.opt_k && f.opt_k->count()) c.strategy.k = f.sketch_k;
    if (f.opt_p && f.opt_p->count()) c.strategy.p = f.power;
    if (f.opt_l && f.opt_l->count()) c.strategy.l = f.cotail_l;
    if (f.opt_seed && f.opt_seed->count()) c.strategy.seed = f.seed;
    if (f.opt_iters->count()) c.iterations = f.iters;
    if (f.opt_tol->count()) c.stop_tolerance = f.tol;
    if (f.check_bounds) c.check_bounds = true;
    if (f.no_timing) c.output.timing = false;
    if (!f.output_dir.empty()) c.output.dir = f.output_dir;
    if (nlrt) {
        c.method = ex::Method::Nlrt;
        c.format = ex::Format::Tucker;
        c.strategy = nlrta::TruncationStrategy::deterministic();
    }
    return c;
}

// Non-negative integer field of a --strategy spec; 0 is a valid power count.
std::size_t parse_count(const std::string& text, const std::string& spec) {
    std::size_t v = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) throw ex::ConfigError("malformed --strategy '" + spec + "'");
    return v;
}

fs::path resolve_output(const std::string& given, const std::string& fallback_name) {
    if (!given.empty()) return given;
    return ex::default_output_dir() / fallback_name;
}

void print_run(const ex::RunResult& r) {
    std::cout << r.report.at("quality").dump(2) << '\n';
    std::cout << "trace: " << r.trace_path.string() << "\nreport: " << r.report_path.string()
              << "\ndecomposition: " << r.decomposition_dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonnegative low-rank tensor approximation by alternating projections"};
    app.set_version_flag("--version", std::string(nlrta::kVersion));
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a dataset as a DTEN file with a JSON sidecar");
    gen->require_subcommand(1);
    std::string gen_out;
    std::string hilbert_shape = "128,128,128";
    auto* gen_h = gen->add_subcommand("hilbert", "Hilbert tensor 1 / (i_1 + ... + i_d - d + 1)");
    gen_h->add_option("--shape", hilbert_shape, "Shape, e.g. 128,128,128");
    gen_h->add_option("-o,--output", gen_out, "Output DTEN path");
    std::size_t gauss_n = 64;
    double gauss_a = 1.0;
    auto* gen_g = gen->add_subcommand("gaussian", "Two-component 4-D Gaussian mixture on [-a, a]^4");
    gen_g->add_option("--n", gauss_n, "Grid points per axis");
    gen_g->add_option("--a", gauss_a, "Half-width of the domain");
    gen_g->add_option("-o,--output", gen_out, "Output DTEN path");
    std::string import_in;
    auto* gen_i = gen->add_subcommand("import", "Rescale an external DTEN cube linearly to [0, 1]");
    gen_i->add_option("--input", import_in, "Source DTEN file")->required();
    gen_i->add_option("-o,--output", gen_out, "Output DTEN path");

    // approximate / nlrt
    RunFlags approx_flags;
    auto* approx = app.add_subcommand("approximate", "Tucker or TT approximation, plain or alternating projections");
    add_run_flags(approx, approx_flags, true);
    RunFlags nlrt_flags;
    auto* nlrt = app.add_subcommand("nlrt", "Consensus alternating projections baseline (Tucker)");
    add_run_flags(nlrt, nlrt_flags, false);

    // bench
    std::string bench_format = "tucker";
    std::string bench_ranks = "3,2,4";
    std::string bench_sizes = "32,48,64,96";
    std::vector<std::string> bench_strategies{"det"};
    std::size_t bench_repeats = 5;
    std::string bench_out;
    std::string bench_slopes;
    auto* bench = app.add_subcommand("bench", "Median per-iteration times on Hilbert cubes and log-log slopes");
    bench->add_option("--format", bench_format, "tucker or tt")->check(CLI::IsMember({"tucker", "tt"}));
    bench->add_option("--ranks", bench_ranks, "Rank tuple; its length fixes the cube order");
    bench->add_option("--sizes", bench_sizes, "Cube sizes n");
    bench->add_option("--strategy", bench_strategies, "det | hmt:P:K | tropp:K:L (repeatable)");
    bench->add_option("--repeats", bench_repeats, "Timed iterations per point after one warm-up");
    bench->add_option("-o,--output", bench_out, "Timing CSV (default: <output dir>/bench.csv)");
    bench->add_option("--slopes", bench_slopes, "Slope CSV (default: <output dir>/bench_slopes.csv)");

    // report
    std::string rep_reference;
    std::string rep_decomposition;
    std::string rep_approximation;
    auto* report = app.add_subcommand("report", "Quality metrics of an approximation against a reference");
    report->add_option("--reference", rep_reference, "Reference DTEN tensor")->required();
    auto* rep_src = report->add_option_group("approximation");
    rep_src->add_option("--decomposition", rep_decomposition, "Decomposition directory with manifest.json");
    rep_src->add_option("--approximation", rep_approximation, "Approximation DTEN tensor");
    rep_src->require_option(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ex::ExitCode::Config);
    }

    try {
        if (gen->parsed()) {
            nlrta::DenseTensor x;
            json meta = {{"version", nlrta::kVersion}};
            std::string fallback;
            if (gen_h->parsed()) {
                const nlrta::Shape shape = ex::parse_size_list(hilbert_shape);
                x = nlrta::hilbert_tensor(shape);
                meta["source"] = "hilbert";
                meta["shape"] = shape;
                fallback = "hilbert.dten";
            } else if (gen_g->parsed()) {
                x = nlrta::gaussian_mixture_tensor(nlrta::standard_mixture(gauss_n, gauss_a));
                meta["source"] = "gaussian_mixture";
                meta["n"] = gauss_n;
                meta["a"] = gauss_a;
                meta["weights"] = {1.0, 1.0};
                fallback = "gaussian.dten";
            } else {
                const nlrta::RescaledTensor r = nlrta::rescale_unit_interval(nlrta::load_tensor(import_in));
                x = r.tensor;
                meta["source"] = import_in;
                meta["rescale"] = {{"min", r.min}, {"max", r.max}};
                fallback = fs::path(import_in).stem().string() + "_unit.dten";
            }
            const fs::path out = resolve_output(gen_out, fallback);
            if (out.has_parent_path()) fs::create_directories(out.parent_path());
            nlrta::save_tensor(x, out);
            nlrta::write_sidecar(out, meta);
            std::cout << out.string() << '\n';
        } else if (approx->parsed()) {
            print_run(ex::run_experiment(build_config(approx_flags, false)));
        } else if (nlrt->parsed()) {
            print_run(ex::run_experiment(build_config(nlrt_flags, true)));
        } else if (bench->parsed()) {
            ex::BenchConfig cfg;
            if (bench_format == "tt") cfg.format = ex::Format::TT;
            cfg.ranks = ex::parse_size_list(bench_ranks);
            cfg.sizes = ex::parse_size_list(bench_sizes);
            cfg.repeats = bench_repeats;
            cfg.strategies.clear();
            for (const std::string& s : bench_strategies) {
                const std::vector<std::string> parts = [&] {
                    std::vector<std::string> v;
                    std::stringstream ss(s);
                    std::string item;
                    while (std::getline(ss, item, ':')) v.push_back(item);
                    return v;
                }();
                const nlrta::TruncationKind kind = ex::parse_svd_kind(parts.at(0));
                if (kind == nlrta::TruncationKind::Deterministic && parts.size() == 1) {
                    cfg.strategies.push_back(nlrta::TruncationStrategy::deterministic());
                } else if (kind != nlrta::TruncationKind::Deterministic && parts.size() == 3) {
                    const std::size_t a = parse_count(parts[1], s);
                    const std::size_t b = parse_count(parts[2], s);
                    cfg.strategies.push_back(kind == nlrta::TruncationKind::HMT ? nlrta::TruncationStrategy::hmt(a, b)
                                                                                : nlrta::TruncationStrategy::tropp(a, b));
                } else {
                    throw ex::ConfigError("malformed --strategy '" + s + "'");
                }
            }
            const ex::BenchResult result = ex::run_bench(cfg);
            const fs::path out = resolve_output(bench_out, "bench.csv");
            const fs::path slopes = resolve_output(bench_slopes, "bench_slopes.csv");
            for (const fs::path& p : {out, slopes}) {
                if (p.has_parent_path()) fs::create_directories(p.parent_path());
            }
            std::ofstream o(out);
            std::ofstream s(slopes);
            if (!o || !s) throw nlrta::IoError("cannot write bench output");
            ex::write_bench_csv(result, o);
            ex::write_slopes_csv(result, s);
            if (!o || !s) throw nlrta::IoError("bench output write failed");
            ex::write_bench_csv(result, std::cout);
            ex::write_slopes_csv(result, std::cout);
        } else if (report->parsed()) {
            const nlrta::DenseTensor x = nlrta::load_tensor(rep_reference);
            const nlrta::DenseTensor y = rep_decomposition.empty() ? nlrta::load_tensor(rep_approximation)
                                                                   : ex::load_decomposition(rep_decomposition);
            std::cout << ex::to_json(nlrta::quality_report(x, y)).dump(2) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ex::exit_code_for(e));
    }
    return 0;
}
