// SPDX-License-Identifier: MIT
#include "nlrta/tensor_train.hpp"

#include "nlrta/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace nlrta {

Shape TTDecomposition::shape() const {
    Shape s;
    s.reserve(ndims());
    s.push_back(static_cast<std::size_t>(first.rows()));
    for (const DenseTensor& c : cores) s.push_back(c.shape()[1]);
    s.push_back(static_cast<std::size_t>(last.cols()));
    return s;
}

std::vector<std::size_t> TTDecomposition::ranks() const {
    std::vector<std::size_t> r;
    r.reserve(ndims() - 1);
    r.push_back(static_cast<std::size_t>(first.cols()));
    for (const DenseTensor& c : cores) r.push_back(c.shape()[2]);
    return r;
}

void TTDecomposition::validate() const {
    auto left = static_cast<std::size_t>(first.cols());
    for (std::size_t k = 0; k < cores.size(); ++k) {
        if (cores[k].ndims() != 3 || cores[k].shape()[0] != left) {
            throw ShapeError("TT core " + std::to_string(k + 2) + " does not chain with its left neighbour");
        }
        left = cores[k].shape()[2];
    }
    if (static_cast<std::size_t>(last.rows()) != left) throw ShapeError("TT last factor does not chain");
}

TTDecomposition ttsvd(const DenseTensor& x, std::span<const std::size_t> ranks, const TruncationStrategy& strategy,
                      TruncationLog* log) {
    const std::size_t d = x.ndims();
    if (d < 2) throw ShapeError("TTSVD needs a tensor of order at least 2");
    if (ranks.size() != d - 1) {
        throw ShapeError("TTSVD needs " + std::to_string(d - 1) + " ranks, got " + std::to_string(ranks.size()));
    }
    for (std::size_t r : ranks) {
        if (r == 0) throw ArgumentError("TT ranks must be positive");
    }
    if (log) log->discarded_sq.clear();

    const Shape& n = x.shape();
    TTDecomposition out;
    out.cores.reserve(d - 2);
    Matrix carry;  // S V^T of the previous step, r_{k-1} x (n_k ... n_d)
    std::size_t left = 1;
    for (std::size_t k = 1; k < d; ++k) {
        const std::size_t rows = left * n[k - 1];
        const std::size_t cols = (k == 1 ? x.size() : static_cast<std::size_t>(carry.size())) / rows;
        const double* buf = k == 1 ? x.data().data() : carry.data();
        const ConstMatrixView g(buf, static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        TruncatedSVD svd = truncate(g, ranks[k - 1], strategy, derive_seed(strategy.seed, "ttsvd.split", k));
        if (log) log->discarded_sq.push_back(std::max(0.0, g.squaredNorm() - svd.S.squaredNorm()));
        const std::size_t rk = svd.rank();
        if (k == 1) {
            out.first = std::move(svd.U);
        } else {
            out.cores.emplace_back(Shape{left, n[k - 1], rk}, std::vector<double>(svd.U.data(), svd.U.data() + svd.U.size()));
        }
        carry = svd.weighted_vt();
        left = rk;
    }
    out.last = std::move(carry);
    return out;
}

DenseTensor tt_reconstruct(const TTDecomposition& t) {
    t.validate();
    // acc is (n_1 ... n_k) x r_k in row-major order.
    Matrix acc = t.first;
    for (const DenseTensor& c : t.cores) {
        const auto r0 = static_cast<Eigen::Index>(c.shape()[0]);
        const auto nk = static_cast<Eigen::Index>(c.shape()[1]);
        const auto r1 = static_cast<Eigen::Index>(c.shape()[2]);
        Matrix next = acc * c.as_matrix(static_cast<std::size_t>(r0), static_cast<std::size_t>(nk * r1));
        acc = MatrixView(next.data(), next.rows() * nk, r1);
    }
    const Matrix full = acc * t.last;
    return DenseTensor(t.shape(), std::vector<double>(full.data(), full.data() + full.size()));
}

double tt_element(const TTDecomposition& t, std::span<const std::size_t> index) {
    t.validate();
    const Shape s = t.shape();
    if (index.size() != s.size()) throw ShapeError("index arity does not match tensor order");
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (index[k] < 1 || index[k] > s[k]) throw ShapeError("index out of bounds");
    }
    Eigen::RowVectorXd v = t.first.row(static_cast<Eigen::Index>(index[0] - 1));
    for (std::size_t k = 0; k < t.cores.size(); ++k) {
        const DenseTensor& c = t.cores[k];
        const auto r0 = static_cast<Eigen::Index>(c.shape()[0]);
        const auto nk = static_cast<Eigen::Index>(c.shape()[1]);
        const auto r1 = static_cast<Eigen::Index>(c.shape()[2]);
        // Slice (:, i_k, :) is an r0 x r1 block with row stride nk * r1.
        const Eigen::Map<const Matrix, 0, Eigen::OuterStride<>> slice(
            c.data().data() + static_cast<Eigen::Index>(index[k + 1] - 1) * r1, r0, r1, Eigen::OuterStride<>(nk * r1));
        v = v * slice;
    }
    return v.dot(t.last.col(static_cast<Eigen::Index>(index.back() - 1)));
}

TTApproximation nttsvd(const DenseTensor& x, std::span<const std::size_t> ranks, const SolverOptions& options,
                       const TruncationStrategy& strategy) {
    if (options.iterations == 0) throw ArgumentError("NTTSVD needs at least one iteration");
    const double ref_f = frobenius_norm(x);
    const double ref_c = chebyshev_norm(x);
    if (ref_f == 0.0) throw ArgumentError("cannot approximate the zero tensor");

    TTApproximation out;
    DenseTensor iterate = x;
    Stopwatch clock;
    TruncationLog log;
    const bool check = options.check_bounds && strategy.kind == TruncationKind::Deterministic;
    for (std::size_t i = 1; i <= options.iterations; ++i) {
        clock.start();
        nonneg_project_inplace(iterate);
        const TruncationStrategy step = strategy.with_seed(derive_seed(strategy.seed, "nttsvd.iteration", i));
        out.decomposition = ttsvd(iterate, ranks, step, check ? &log : nullptr);
        DenseTensor next = tt_reconstruct(out.decomposition);
        clock.stop();
        if (check) {
            const double err = frobenius_distance(iterate, next);
            if (err > log.bound() * (1.0 + 1e-9) + 1e-9 * frobenius_norm(iterate)) {
                throw NumericalError("TTSVD error exceeds the discarded singular value bound at iteration " +
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
