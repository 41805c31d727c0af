// SPDX-License-Identifier: MIT
#pragma once

#include "nlrta/svd.hpp"
#include "nlrta/tensor.hpp"
#include "nlrta/trace.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nlrta {

/// X = G x_1 U_1 x_2 ... x_d U_d with orthonormal factor columns.
struct TuckerDecomposition {
    DenseTensor core;
    std::vector<Matrix> factors;  ///< factor k is n_k x r_k

    [[nodiscard]] std::size_t ndims() const noexcept { return factors.size(); }
    /// Full tensor shape (n_1, ..., n_d).
    [[nodiscard]] Shape shape() const;
    /// Tucker ranks (r_1, ..., r_d).
    [[nodiscard]] std::vector<std::size_t> ranks() const;
    /// Throws ShapeError if the core does not match the factors.
    void validate() const;
};

/// Squared Frobenius norm discarded by each truncation of a sweep, in mode
/// order. With exact truncation their sum equals the squared approximation
/// error.
struct TruncationLog {
    std::vector<double> discarded_sq;

    [[nodiscard]] double bound() const;
};

/// Sequentially truncated HOSVD: modes 1..d in order, each truncating the
/// current (already shrunk) core's unfolding and replacing it by S V^T.
/// Ranks larger than the corresponding extent are clamped.
[[nodiscard]] TuckerDecomposition sthosvd(const DenseTensor& x, std::span<const std::size_t> ranks,
                                          const TruncationStrategy& strategy = {},
                                          TruncationLog* log = nullptr);

/// Chained mode products G x_1 U_1 ... x_d U_d.
[[nodiscard]] DenseTensor tucker_reconstruct(const TuckerDecomposition& t);

/// Single entry at a 1-based multi-index, O(r^d) work.
[[nodiscard]] double tucker_element(const TuckerDecomposition& t, std::span<const std::size_t> index);

struct TuckerApproximation {
    TuckerDecomposition decomposition;
    DenseTensor approximation;  ///< reconstruction of `decomposition`
    ConvergenceTrace trace;
};

/// Alternating projections between the nonnegative orthant and STHOSVD.
///
/// Each iteration applies max(., 0), then STHOSVD, then reconstructs; the
/// trace row is measured on the reconstructed (low-rank) iterate against
/// `x`. Iteration i draws randomness from derive_seed(strategy.seed,
/// "nsthosvd.iteration", i).
[[nodiscard]] TuckerApproximation nsthosvd(const DenseTensor& x, std::span<const std::size_t> ranks,
                                           const SolverOptions& options,
                                           const TruncationStrategy& strategy = {});

}  // namespace nlrta
