// SPDX-License-Identifier: MIT
// Acceptance runner. `acceptance [c1 .. c8 | all]` prints one status line per
// criterion followed by indented measurements. Exit status is 1 if any
// criterion fails, 77 if every selected criterion was skipped.
#include "experiment.hpp"
#include "nlrta/datasets.hpp"
#include "nlrta/dten.hpp"
#include "nlrta/metrics.hpp"
#include "nlrta/nlrt.hpp"
#include "nlrta/svd.hpp"
#include "nlrta/tensor.hpp"
#include "nlrta/tensor_train.hpp"
#include "nlrta/trace.hpp"
#include "nlrta/tucker.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace nlrta;
namespace ex = nlrta::experiment;

namespace {

// Pinned tolerances and bands.
constexpr std::size_t kHilbertN = 128;
constexpr double kC1RelF = 7.72e-2, kC1RelFTol = 1e-3;
constexpr double kC1RelC = 3.67e-1, kC1RelCTol = 5e-3;
constexpr double kC1NegF = 9.7e-3, kC1NegFTol = 1e-3;
constexpr std::size_t kLongIters = 250;
constexpr double kC2NegF = 1e-14;
constexpr double kC2RelFLo = 7.7e-2, kC2RelFHi = 8.2e-2;
constexpr double kC2RelCLo = 3.9e-1, kC2RelCHi = 4.0e-1;
constexpr double kC2Decay = 10.0;
constexpr double kC3RelF = 8.5e-2, kC3NegF = 1e-12;
constexpr int kC3Seeds = 10, kC3MinPass = 9;
constexpr double kC3Speedup = 3.0;
constexpr double kC4NegLo = 1e-11, kC4NegHi = 1e-8;
constexpr double kC4RelF = 7.88e-2, kC4RelFTol = 2e-3;
constexpr double kC4NegRatio = 1e4;
constexpr double kC5PlainFrac = 0.25, kC5FinalFrac = 0.03, kC5Shrink = 100.0, kC5NlrtRatio = 2.0;
constexpr std::size_t kC5Iters = 200;
constexpr double kC6RelF = 1.8e-1, kC6RelFTol = 1e-2;
constexpr double kC6R2 = 0.94, kC6R2Tol = 0.01;
constexpr double kC6SsimTucker = 0.60, kC6SsimTT = 0.63, kC6SsimTol = 0.05;
constexpr double kC6Shrink = 100.0;
constexpr std::size_t kC6Iters = 100;
constexpr double kC7Svd = 1e-10, kC7Exact = 1e-10, kC7Identity = 1e-9;
constexpr double kC8DetLo = 3.5, kC8DetHi = 4.5, kC8SketchLo = 2.5, kC8SketchHi = 3.5;

// Reported to ctest as a skipped test.
constexpr int kSkipExit = 77;

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Outcome {
    bool skipped = false;
    std::string skip_reason;
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string detail) {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }
    [[nodiscard]] bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

std::string fmt(const char* format, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, a);
    return buf;
}

std::string sci(double v) { return fmt("%.4e", v); }

std::string band(double v, double lo, double hi) { return sci(v) + " in [" + sci(lo) + ", " + sci(hi) + "]"; }

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

double median_iteration_time(const ConvergenceTrace& t) { return ex::median(iteration_times(t)); }

const std::vector<std::size_t> kTuckerRanks{3, 2, 4};
const std::vector<std::size_t> kTTRanks{3, 2};

const DenseTensor& hilbert() {
    static const DenseTensor x = hilbert_tensor(Shape(3, kHilbertN));
    return x;
}

SolverOptions iterations(std::size_t n) {
    SolverOptions o;
    o.iterations = n;
    return o;
}

// ---------------------------------------------------------------------------

Outcome c1() {
    Outcome out;
    const DenseTensor& x = hilbert();
    const double norm = frobenius_norm(x);
    const auto check = [&](const std::string& label, const DenseTensor& approx) {
        const RelativeErrors e = relative_errors(x, approx);
        const NegativityStats n = negativity_stats(approx);
        out.add(label + " relative Frobenius error", std::abs(e.frobenius - kC1RelF) <= kC1RelFTol,
                band(e.frobenius, kC1RelF - kC1RelFTol, kC1RelF + kC1RelFTol));
        out.add(label + " relative Chebyshev error", std::abs(e.chebyshev - kC1RelC) <= kC1RelCTol,
                band(e.chebyshev, kC1RelC - kC1RelCTol, kC1RelC + kC1RelCTol));
        out.add(label + " negativity Frobenius", std::abs(n.frobenius - kC1NegF) <= kC1NegFTol,
                band(n.frobenius, kC1NegF - kC1NegFTol, kC1NegF + kC1NegFTol) + " (divided by ||X||_F: " +
                    sci(n.frobenius / norm) + ", negative fraction " + sci(n.fraction) + ")");
    };
    check("STHOSVD", tucker_reconstruct(sthosvd(x, kTuckerRanks)));
    check("TTSVD", tt_reconstruct(ttsvd(x, kTTRanks)));
    return out;
}

void long_run_checks(Outcome& out, const std::string& label, const ConvergenceTrace& t) {
    const TraceRow& last = t.back();
    out.add(label + " negativity Frobenius", last.negativity.frobenius < kC2NegF,
            sci(last.negativity.frobenius) + " < " + sci(kC2NegF));
    out.add(label + " relative Frobenius error", in_band(last.rel_err_frobenius, kC2RelFLo, kC2RelFHi),
            band(last.rel_err_frobenius, kC2RelFLo, kC2RelFHi));
    out.add(label + " relative Chebyshev error", in_band(last.rel_err_chebyshev, kC2RelCLo, kC2RelCHi),
            band(last.rel_err_chebyshev, kC2RelCLo, kC2RelCHi));
    const double at10 = t.rows.at(9).negativity.frobenius;
    const double at100 = t.rows.at(99).negativity.frobenius;
    out.add(label + " decay from iteration 10 to 100", at100 * kC2Decay <= at10,
            sci(at10) + " -> " + sci(at100) + ", need factor >= " + fmt("%.0f", kC2Decay));
}

Outcome c2() {
    Outcome out;
    const DenseTensor& x = hilbert();
    long_run_checks(out, "NSTHOSVD", nsthosvd(x, kTuckerRanks, iterations(kLongIters)).trace);
    long_run_checks(out, "NTTSVD", nttsvd(x, kTTRanks, iterations(kLongIters)).trace);
    return out;
}

Outcome c3() {
    Outcome out;
    const DenseTensor& x = hilbert();
    using Runner = std::function<ConvergenceTrace(const TruncationStrategy&)>;
    const Runner tucker = [&](const TruncationStrategy& s) {
        return nsthosvd(x, kTuckerRanks, iterations(kLongIters), s).trace;
    };
    const Runner tt = [&](const TruncationStrategy& s) {
        return nttsvd(x, kTTRanks, iterations(kLongIters), s).trace;
    };
    struct Family {
        std::string name;
        Runner run;
        std::vector<TruncationStrategy> variants;
    };
    const std::vector<Family> families{
        {"NSTHOSVD", tucker,
         {TruncationStrategy::hmt(1, 11), TruncationStrategy::hmt(0, 15), TruncationStrategy::tropp(6, 35)}},
        {"NTTSVD", tt,
         {TruncationStrategy::hmt(1, 12), TruncationStrategy::hmt(0, 15), TruncationStrategy::tropp(4, 30)}},
    };
    for (const Family& f : families) {
        const double det_time = median_iteration_time(f.run(TruncationStrategy::deterministic()));
        for (const TruncationStrategy& v : f.variants) {
            int good = 0;
            double worst_relf = 0.0;
            double worst_neg = 0.0;
            std::vector<double> times;
            for (int seed = 1; seed <= kC3Seeds; ++seed) {
                const ConvergenceTrace t = f.run(v.with_seed(static_cast<std::uint64_t>(seed)));
                const TraceRow& last = t.back();
                if (last.rel_err_frobenius <= kC3RelF && last.negativity.frobenius <= kC3NegF) ++good;
                worst_relf = std::max(worst_relf, last.rel_err_frobenius);
                worst_neg = std::max(worst_neg, last.negativity.frobenius);
                times.push_back(median_iteration_time(t));
            }
            const std::string label = f.name + " " + v.label();
            out.add(label + " seeds within error and negativity bounds", good >= kC3MinPass,
                    std::to_string(good) + "/" + std::to_string(kC3Seeds) + " (worst relF " + sci(worst_relf) +
                        ", worst negF " + sci(worst_neg) + ")");
            const double t = ex::median(times);
            out.add(label + " per-iteration time vs deterministic", t * kC3Speedup <= det_time,
                    sci(t) + " s vs " + sci(det_time) + " s, speedup " + fmt("%.2f", det_time / t));
        }
    }
    return out;
}

Outcome c4() {
    Outcome out;
    const DenseTensor& x = hilbert();
    const NlrtResult r = nlrt_iterate(NlrtState::from_input(x, kTuckerRanks), x, iterations(kLongIters));
    const DenseTensor aux = tucker_reconstruct(nlrt_auxiliary(r.state));
    const NegativityStats neg = negativity_stats(aux);
    const RelativeErrors err = relative_errors(x, aux);
    out.add("auxiliary tensor negativity Frobenius", in_band(neg.frobenius, kC4NegLo, kC4NegHi),
            band(neg.frobenius, kC4NegLo, kC4NegHi));
    out.add("auxiliary tensor relative Frobenius error", std::abs(err.frobenius - kC4RelF) <= kC4RelFTol,
            band(err.frobenius, kC4RelF - kC4RelFTol, kC4RelF + kC4RelFTol));
    const ConvergenceTrace t = nsthosvd(x, kTuckerRanks, iterations(kLongIters)).trace;
    const double nst_neg = t.back().negativity.frobenius;
    out.add("NSTHOSVD negativity vs NLRT", nst_neg * kC4NegRatio <= neg.frobenius,
            sci(nst_neg) + " vs " + sci(neg.frobenius) + ", need factor >= " + sci(kC4NegRatio));
    const double nst_time = median_iteration_time(t);
    const double nlrt_time = median_iteration_time(r.traces.front());
    out.add("NSTHOSVD per-iteration time below NLRT", nst_time < nlrt_time,
            sci(nst_time) + " s vs " + sci(nlrt_time) + " s");
    return out;
}

Outcome c5() {
    Outcome out;
    const char* full = std::getenv("NLRTA_ACCEPTANCE_FULL");
    const std::size_t n = (full != nullptr && std::string(full) == "1") ? 64 : 32;
    const DenseTensor x = gaussian_mixture_tensor(standard_mixture(n));
    const std::vector<std::size_t> tucker_ranks{14, 14, 14, 14};
    const std::vector<std::size_t> tt_ranks{10, 20, 10};
    out.add("grid size", true, "n = " + std::to_string(n) + ", d = 4");

    const NegativityStats plain_tucker = negativity_stats(tucker_reconstruct(sthosvd(x, tucker_ranks)));
    const NegativityStats plain_tt = negativity_stats(tt_reconstruct(ttsvd(x, tt_ranks)));
    out.add("STHOSVD negative fraction", plain_tucker.fraction >= kC5PlainFrac,
            sci(plain_tucker.fraction) + " >= " + sci(kC5PlainFrac));
    out.add("TTSVD negative fraction", plain_tt.fraction >= kC5PlainFrac,
            sci(plain_tt.fraction) + " >= " + sci(kC5PlainFrac));

    const auto after = [&](const std::string& label, const NegativityStats& plain, const ConvergenceTrace& t) {
        const NegativityStats& fin = t.back().negativity;
        out.add(label + " negative fraction", fin.fraction <= kC5FinalFrac,
                sci(fin.fraction) + " <= " + sci(kC5FinalFrac));
        out.add(label + " negativity shrink", fin.frobenius * kC5Shrink <= plain.frobenius,
                sci(plain.frobenius) + " -> " + sci(fin.frobenius) + ", need factor >= " + fmt("%.0f", kC5Shrink));
        return fin.frobenius;
    };
    const double nst = after("NSTHOSVD", plain_tucker, nsthosvd(x, tucker_ranks, iterations(kC5Iters)).trace);
    after("NTTSVD", plain_tt, nttsvd(x, tt_ranks, iterations(kC5Iters)).trace);

    const NlrtResult r = nlrt_iterate(NlrtState::from_input(x, tucker_ranks), x, iterations(kC5Iters));
    const double nlrt = negativity_stats(tucker_reconstruct(nlrt_auxiliary(r.state))).frobenius;
    out.add("NLRT auxiliary negativity vs NSTHOSVD", nlrt >= kC5NlrtRatio * nst,
            sci(nlrt) + " vs " + sci(nst) + ", need factor >= " + fmt("%.0f", kC5NlrtRatio));
    return out;
}

Outcome c6() {
    Outcome out;
    const char* path = std::getenv("NLRTA_HYPERSPECTRAL");
    if (path == nullptr || *path == '\0') {
        out.skipped = true;
        out.skip_reason = "set NLRTA_HYPERSPECTRAL to a 307x307x191 DTEN cube scaled to [0, 1]";
        return out;
    }
    const DenseTensor x = load_tensor(path);
    const auto check = [&](const std::string& label, const DenseTensor& plain, const DenseTensor& approx,
                           double ssim_ref) {
        const QualityReport q = quality_report(x, approx);
        const double plain_neg = negativity_stats(plain).frobenius;
        out.add(label + " relative Frobenius error", std::abs(q.rel_err_frobenius - kC6RelF) <= kC6RelFTol,
                band(q.rel_err_frobenius, kC6RelF - kC6RelFTol, kC6RelF + kC6RelFTol));
        out.add(label + " R^2", std::abs(q.r_squared - kC6R2) <= kC6R2Tol,
                band(q.r_squared, kC6R2 - kC6R2Tol, kC6R2 + kC6R2Tol));
        const double ssim = q.ssim_bandwise_mean.value_or(std::nan(""));
        out.add(label + " band-wise SSIM", std::abs(ssim - ssim_ref) <= kC6SsimTol,
                band(ssim, ssim_ref - kC6SsimTol, ssim_ref + kC6SsimTol));
        out.add(label + " negativity shrink", q.negativity.frobenius * kC6Shrink <= plain_neg,
                sci(plain_neg) + " -> " + sci(q.negativity.frobenius));
    };
    const std::vector<std::size_t> tucker_ranks{40, 40, 33};
    const std::vector<std::size_t> tt_ranks{33, 33};
    check("NSTHOSVD", tucker_reconstruct(sthosvd(x, tucker_ranks)),
          nsthosvd(x, tucker_ranks, iterations(kC6Iters)).approximation, kC6SsimTucker);
    check("NTTSVD", tt_reconstruct(ttsvd(x, tt_ranks)), nttsvd(x, tt_ranks, iterations(kC6Iters)).approximation,
          kC6SsimTT);
    return out;
}

// ---------------------------------------------------------------------------
// Property suites. Independent reference values come from Eigen's JacobiSVD.

DenseTensor gaussian_tensor(const Shape& shape, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    DenseTensor x(shape);
    for (double& v : x.data()) v = dist(rng);
    return x;
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    return m;
}

double tail_norm(const Matrix& a, std::size_t r) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(a)};
    const Vector& s = svd.singularValues();
    double sq = 0.0;
    for (Eigen::Index i = static_cast<Eigen::Index>(r); i < s.size(); ++i) sq += s(i) * s(i);
    return std::sqrt(sq);
}

bool bump(std::vector<std::size_t>& idx, const Shape& shape) {
    for (std::size_t m = idx.size(); m-- > 0;) {
        if (++idx[m] <= shape[m]) return true;
        idx[m] = 1;
    }
    return false;
}

void roundtrip_checks(Outcome& out) {
    std::size_t shapes = 0;
    std::size_t failures = 0;
    for (std::size_t d = 1; d <= 4; ++d) {
        Shape shape(d, 1);
        do {
            ++shapes;
            DenseTensor x(shape);
            for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] = static_cast<double>(i);
            for (std::size_t k = 1; k <= d; ++k) {
                const Matrix u = unfold(x, k);
                bool ok = fold(u, k, shape) == x;
                std::vector<std::size_t> idx(d, 1);
                do {
                    std::size_t col = 0;
                    for (std::size_t m = 0; m < d; ++m) {
                        if (m + 1 != k) col = col * shape[m] + (idx[m] - 1);
                    }
                    ok = ok && u(static_cast<Eigen::Index>(idx[k - 1] - 1), static_cast<Eigen::Index>(col)) ==
                                   x.at(idx);
                } while (bump(idx, shape));
                if (!ok) ++failures;
            }
        } while (bump(shape, Shape(d, 4)));
    }
    out.add("unfold/fold round-trips", failures == 0,
            std::to_string(shapes) + " shapes up to 4x4x4x4, " + std::to_string(failures) + " failures");
}

void svd_checks(Outcome& out, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 3 + rng() % 30;
        const std::size_t n = 3 + rng() % 30;
        const std::size_t r = 1 + rng() % std::min(m, n);
        const Matrix a = gaussian_matrix(m, n, rng);
        const double err = (a - truncated_svd(a, r).reconstruct()).norm();
        const double oracle = tail_norm(a, r);
        const double rel = oracle > 0.0 ? std::abs(err - oracle) / oracle : err / a.norm();
        worst = std::max(worst, rel);
    }
    out.add("truncated SVD error equals discarded singular values", worst <= kC7Svd,
            "worst relative deviation " + sci(worst) + " over 100 matrices");
}

void exact_rank_checks(Outcome& out, std::mt19937_64& rng) {
    const Shape shape{9, 8, 10};
    const std::vector<std::size_t> tr{2, 3, 2};
    DenseTensor tucker_input = gaussian_tensor(Shape{2, 3, 2}, rng);
    for (std::size_t k = 1; k <= 3; ++k) {
        tucker_input = mode_k_product(tucker_input, gaussian_matrix(shape[k - 1], tr[k - 1], rng), k);
    }
    const std::vector<std::size_t> ttr{2, 3};
    // Rank-(2, 3) TT: sum of products of mode-wise factors through a fixed core chain.
    const Matrix g1 = gaussian_matrix(9, 2, rng);
    const DenseTensor g2 = gaussian_tensor(Shape{2, 8, 3}, rng);
    const Matrix g3 = gaussian_matrix(3, 10, rng);
    DenseTensor tt_input(shape);
    std::vector<std::size_t> idx(3, 1);
    do {
        double v = 0.0;
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 3; ++b) {
                v += g1(static_cast<Eigen::Index>(idx[0] - 1), static_cast<Eigen::Index>(a)) *
                     g2.at({a + 1, idx[1], b + 1}) *
                     g3(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(idx[2] - 1));
            }
        }
        tt_input.at(idx) = v;
    } while (bump(idx, shape));

    const std::vector<TruncationStrategy> strategies{TruncationStrategy::deterministic(),
                                                     TruncationStrategy::hmt(1, 6, 11),
                                                     TruncationStrategy::tropp(6, 12, 12)};
    for (const TruncationStrategy& s : strategies) {
        const double et = relative_errors(tucker_input, tucker_reconstruct(sthosvd(tucker_input, tr, s))).frobenius;
        const double ett = relative_errors(tt_input, tt_reconstruct(ttsvd(tt_input, ttr, s))).frobenius;
        out.add("exact Tucker rank recovered, " + s.label(), et <= kC7Exact, sci(et) + " <= " + sci(kC7Exact));
        out.add("exact TT rank recovered, " + s.label(), ett <= kC7Exact, sci(ett) + " <= " + sci(kC7Exact));
    }
}

void identity_and_bound_checks(Outcome& out, std::mt19937_64& rng) {
    double worst_identity = 0.0;
    double worst_tucker_ratio = 0.0;
    double worst_tt_ratio = 0.0;
    const std::vector<Shape> shapes{{6, 7, 5}, {5, 4, 6, 3}, {4, 3, 5, 4, 3}};
    for (int rep = 0; rep < 10; ++rep) {
        for (const Shape& shape : shapes) {
            const std::size_t d = shape.size();
            const DenseTensor x = gaussian_tensor(shape, rng);
            std::vector<std::size_t> tr(d);
            double tucker_lower = 0.0;
            for (std::size_t k = 1; k <= d; ++k) {
                tr[k - 1] = 1 + rng() % (shape[k - 1] - 1);
                tucker_lower = std::max(tucker_lower, tail_norm(unfold(x, k), tr[k - 1]));
            }
            std::vector<std::size_t> ttr(d - 1);
            double tt_lower = 0.0;
            for (std::size_t k = 1; k < d; ++k) {
                const Matrix m = matricize(x, k);
                const auto full = static_cast<std::size_t>(std::min(m.rows(), m.cols()));
                ttr[k - 1] = 1 + rng() % std::max<std::size_t>(full - 1, 1);
                tt_lower = std::max(tt_lower, tail_norm(m, ttr[k - 1]));
            }
            TruncationLog tlog;
            const double et = frobenius_distance(x, tucker_reconstruct(sthosvd(x, tr, {}, &tlog)));
            TruncationLog ttlog;
            const double ett = frobenius_distance(x, tt_reconstruct(ttsvd(x, ttr, {}, &ttlog)));
            worst_identity = std::max({worst_identity, std::abs(et - tlog.bound()) / et,
                                       std::abs(ett - ttlog.bound()) / ett});
            worst_tucker_ratio = std::max(worst_tucker_ratio, et / (std::sqrt(double(d)) * tucker_lower));
            worst_tt_ratio = std::max(worst_tt_ratio, ett / (std::sqrt(double(d - 1)) * tt_lower));
        }
    }
    out.add("STHOSVD/TTSVD error equals logged discarded singular values", worst_identity <= kC7Identity,
            "worst relative deviation " + sci(worst_identity));
    out.add("STHOSVD within sqrt(d) of the best-rank lower bound", worst_tucker_ratio <= 1.0,
            "worst error / (sqrt(d) * bound) = " + fmt("%.4f", worst_tucker_ratio));
    out.add("TTSVD within sqrt(d-1) of the best-rank lower bound", worst_tt_ratio <= 1.0,
            "worst error / (sqrt(d-1) * bound) = " + fmt("%.4f", worst_tt_ratio));
}

std::string untimed(const ConvergenceTrace& t) {
    std::ostringstream s;
    t.write_csv(s, false);
    return s.str();
}

void reproducibility_checks(Outcome& out) {
    const DenseTensor x = hilbert_tensor(Shape{24, 20, 22});
    const std::vector<TruncationStrategy> strategies{TruncationStrategy::deterministic(),
                                                     TruncationStrategy::hmt(1, 6, 42),
                                                     TruncationStrategy::tropp(6, 14, 42)};
    bool all = true;
    for (const TruncationStrategy& s : strategies) {
        const TuckerApproximation a = nsthosvd(x, kTuckerRanks, iterations(20), s);
        const TuckerApproximation b = nsthosvd(x, kTuckerRanks, iterations(20), s);
        const TTApproximation c = nttsvd(x, kTTRanks, iterations(20), s);
        const TTApproximation e = nttsvd(x, kTTRanks, iterations(20), s);
        all = all && untimed(a.trace) == untimed(b.trace) && a.approximation == b.approximation &&
              untimed(c.trace) == untimed(e.trace) && c.approximation == e.approximation;
    }
    const NlrtResult n1 = nlrt_iterate(NlrtState::from_input(x, kTuckerRanks), x, iterations(10));
    const NlrtResult n2 = nlrt_iterate(NlrtState::from_input(x, kTuckerRanks), x, iterations(10));
    for (std::size_t k = 0; k < n1.traces.size(); ++k) all = all && untimed(n1.traces[k]) == untimed(n2.traces[k]);
    out.add("fixed-seed traces are bitwise reproducible", all, "det, HMT and Tropp for both formats plus NLRT");
}

Outcome c7() {
    Outcome out;
    std::mt19937_64 rng(20240917);
    roundtrip_checks(out);
    svd_checks(out, rng);
    exact_rank_checks(out, rng);
    identity_and_bound_checks(out, rng);
    reproducibility_checks(out);
    return out;
}

Outcome c8() {
    Outcome out;
    ex::BenchConfig cfg;
    cfg.ranks = kTuckerRanks;
    cfg.sizes = {32, 48, 64, 96};
    cfg.repeats = 25;
    cfg.strategies = {TruncationStrategy::deterministic(), TruncationStrategy::hmt(1, 11),
                      TruncationStrategy::hmt(0, 15), TruncationStrategy::tropp(6, 35)};
    const ex::BenchResult r = ex::run_bench(cfg);
    for (const ex::BenchPoint& p : r.points) {
        out.add("timing " + p.strategy + " n=" + std::to_string(p.n), true, sci(p.median) + " s per iteration");
    }
    for (const auto& [label, slope] : r.slopes) {
        const bool det = label == TruncationStrategy::deterministic().label();
        const double lo = det ? kC8DetLo : kC8SketchLo;
        const double hi = det ? kC8DetHi : kC8SketchHi;
        out.add("log-log slope " + label, in_band(slope, lo, hi),
                fmt("%.3f", slope) + " in [" + fmt("%.1f", lo) + ", " + fmt("%.1f", hi) + "]");
    }
    return out;
}

struct Criterion {
    std::string id;
    std::string title;
    Outcome (*run)();
};

const std::vector<Criterion> kCriteria{
    {"c1", "Hilbert plain STHOSVD/TTSVD values", c1},
    {"c2", "alternating-projection convergence on Hilbert", c2},
    {"c3", "randomized variants match deterministic quality at lower cost", c3},
    {"c4", "NLRT vs NSTHOSVD on Hilbert", c4},
    {"c5", "Gaussian mixture negativity reduction", c5},
    {"c6", "hyperspectral cube quality (optional)", c6},
    {"c7", "oracle and property suites", c7},
    {"c8", "per-iteration complexity slopes", c8},
};

}  // namespace

int main(int argc, char** argv) {
    const std::string which = argc > 1 ? argv[1] : "all";
    bool matched = false;
    bool failed = false;
    bool ran = false;
    for (const Criterion& c : kCriteria) {
        if (which != "all" && which != c.id) continue;
        matched = true;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.add("exception", false, e.what());
        }
        const char* status = o.skipped ? "SKIP" : (o.passed() ? "PASS" : "FAIL");
        std::cout << "[" << status << "] " << c.id << " " << c.title << "\n";
        if (o.skipped) std::cout << "    " << o.skip_reason << "\n";
        for (const Check& ch : o.checks) {
            std::cout << "    " << (ch.pass ? "ok   " : "FAIL ") << ch.name << ": " << ch.detail << "\n";
        }
        std::cout.flush();
        failed = failed || (!o.skipped && !o.passed());
        ran = ran || !o.skipped;
    }
    if (!matched) {
        std::cerr << "unknown criterion '" << which << "'; expected c1..c8 or all\n";
        return 2;
    }
    if (failed) return 1;
    return ran ? 0 : kSkipExit;
}
