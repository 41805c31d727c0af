// SPDX-License-Identifier: MIT
#include "nlrta/tucker.hpp"

#include "nlrta/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

namespace nlrta {

namespace {

// Truncates the mode-k unfolding of g; the mode-1 unfolding aliases g's buffer.
TruncatedSVD truncate_unfolding(const DenseTensor& g, std::size_t k, std::size_t r,
                                const TruncationStrategy& strategy, TruncationLog* log) {
    const std::uint64_t seed = derive_seed(strategy.seed, "sthosvd.mode", k);
    auto run = [&](const Eigen::Ref<const Matrix>& a) {
        TruncatedSVD svd = truncate(a, r, strategy, seed);
        if (log) log->discarded_sq.push_back(std::max(0.0, a.squaredNorm() - svd.S.squaredNorm()));
        return svd;
    };
    if (k == 1) return run(g.as_matrix(g.shape()[0], g.size() / g.shape()[0]));
    return run(unfold(g, k));
}

}  // namespace

Shape TuckerDecomposition::shape() const {
    Shape s;
    s.reserve(factors.size());
    for (const Matrix& u : factors) s.push_back(static_cast<std::size_t>(u.rows()));
    return s;
}

std::vector<std::size_t> TuckerDecomposition::ranks() const {
    std::vector<std::size_t> r;
    r.reserve(factors.size());
    for (const Matrix& u : factors) r.push_back(static_cast<std::size_t>(u.cols()));
    return r;
}

void TuckerDecomposition::validate() const {
    if (factors.size() != core.ndims()) throw ShapeError("Tucker core order does not match factor count");
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (static_cast<std::size_t>(factors[k].cols()) != core.shape()[k]) {
            throw ShapeError("Tucker factor " + std::to_string(k + 1) + " does not match the core extent");
        }
    }
}

double TruncationLog::bound() const {
    return std::sqrt(std::accumulate(discarded_sq.begin(), discarded_sq.end(), 0.0));
}

TuckerDecomposition sthosvd(const DenseTensor& x, std::span<const std::size_t> ranks,
                            const TruncationStrategy& strategy, TruncationLog* log) {
    const std::size_t d = x.ndims();
    if (ranks.size() != d) {
        throw ShapeError("STHOSVD needs " + std::to_string(d) + " ranks, got " + std::to_string(ranks.size()));
    }
    for (std::size_t r : ranks) {
        if (r == 0) throw ArgumentError("Tucker ranks must be positive");
    }
    if (log) log->discarded_sq.clear();

    TuckerDecomposition out;
    out.factors.resize(d);
    DenseTensor g;
    for (std::size_t k = 1; k <= d; ++k) {
        const DenseTensor& current = k == 1 ? x : g;
        TruncatedSVD svd = truncate_unfolding(current, k, ranks[k - 1], strategy, log);
        Shape next = current.shape();
        next[k - 1] = svd.rank();
        const Matrix w = svd.weighted_vt();
        if (k == 1) {
            g = DenseTensor(next, std::vector<double>(w.data(), w.data() + w.size()));
        } else {
            g = fold(w, k, next);
        }
        out.factors[k - 1] = std::move(svd.U);
    }
    out.core = std::move(g);
    return out;
}

DenseTensor tucker_reconstruct(const TuckerDecomposition& t) {
    t.validate();
    DenseTensor y = t.core;
    for (std::size_t k = 1; k <= t.ndims(); ++k) y = mode_k_product(y, t.factors[k - 1], k);
    return y;
}

double tucker_element(const TuckerDecomposition& t, std::span<const std::size_t> index) {
    t.validate();
    const std::size_t d = t.ndims();
    if (index.size() != d) throw ShapeError("index arity does not match tensor order");
    for (std::size_t k = 0; k < d; ++k) {
        if (index[k] < 1 || index[k] > static_cast<std::size_t>(t.factors[k].rows())) {
            throw ShapeError("index out of bounds");
        }
    }
    // Contract the trailing core mode with the matching factor row, d times.
    std::vector<double> vals(t.core.data().begin(), t.core.data().end());
    for (std::size_t k = d; k-- > 0;) {
        const std::size_t r = t.core.shape()[k];
        const std::size_t outer = vals.size() / r;
        const auto row = t.factors[k].row(static_cast<Eigen::Index>(index[k] - 1));
        std::vector<double> next(outer, 0.0);
        for (std::size_t o = 0; o < outer; ++o) {
            double sum = 0.0;
            for (std::size_t a = 0; a < r; ++a) sum += vals[o * r + a] * row(static_cast<Eigen::Index>(a));
            next[o] = sum;
        }
        vals = std::move(next);
    }
    return vals.front();
}

TuckerApproximation nsthosvd(const DenseTensor& x, std::span<const std::size_t> ranks,
                             const SolverOptions& options, const TruncationStrategy& strategy) {
    if (options.iterations == 0) throw ArgumentError("NSTHOSVD needs at least one iteration");
    const double ref_f = frobenius_norm(x);
    const double ref_c = chebyshev_norm(x);
    if (ref_f == 0.0) throw ArgumentError("cannot approximate the zero tensor");

    TuckerApproximation out;
    DenseTensor iterate = x;
    Stopwatch clock;
    TruncationLog log;
    const bool check = options.check_bounds && strategy.kind == TruncationKind::Deterministic;
    for (std::size_t i = 1; i <= options.iterations; ++i) {
        clock.start();
        nonneg_project_inplace(iterate);
        const TruncationStrategy step = strategy.with_seed(derive_seed(strategy.seed, "nsthosvd.iteration", i));
        out.decomposition = sthosvd(iterate, ranks, step, check ? &log : nullptr);
        DenseTensor next = tucker_reconstruct(out.decomposition);
        clock.stop();
        if (check) {
            const double err = frobenius_distance(iterate, next);
            if (err > log.bound() * (1.0 + 1e-9) + 1e-9 * frobenius_norm(iterate)) {
                throw NumericalError("STHOSVD error exceeds the discarded singular value bound at iteration " +
                                     std::to_string(i));
            }
        }
        iterate = std::move(next);
        out.trace.rows.push_back(measure_iterate(i, iterate, x, ref_f, ref_c, clock.seconds()));
        if (options.stop_tolerance && out.trace.back().negativity.frobenius < *options.stop_tolerance) break;
    }
    out.approximation = std::move(iterate);
    return out;
}

}  // namespace nlrta
