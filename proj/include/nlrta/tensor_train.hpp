// SPDX-License-Identifier: MIT
#pragma once

#include "nlrta/svd.hpp"
#include "nlrta/tensor.hpp"
#include "nlrta/trace.hpp"
#include "nlrta/tucker.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nlrta {

/// X(i_1, ..., i_d) = first(i_1, :) * core_2(:, i_2, :) * ... * last(:, i_d).
struct TTDecomposition {
    Matrix first;                   ///< n_1 x r_1
    std::vector<DenseTensor> cores; ///< d - 2 cores, core k of shape (r_{k-1}, n_k, r_k)
    Matrix last;                    ///< r_{d-1} x n_d

    [[nodiscard]] std::size_t ndims() const noexcept { return cores.size() + 2; }
    [[nodiscard]] Shape shape() const;
    /// TT ranks (r_1, ..., r_{d-1}).
    [[nodiscard]] std::vector<std::size_t> ranks() const;
    /// Throws ShapeError if adjacent rank dimensions do not chain.
    void validate() const;
};

/// Left-to-right sweep of truncated SVDs over the matricizations. The first
/// factor and every interior core have orthonormal left unfoldings; the last
/// factor carries S V^T. Requires d >= 2 and d - 1 ranks; ranks larger than
/// the matricization allows are clamped.
[[nodiscard]] TTDecomposition ttsvd(const DenseTensor& x, std::span<const std::size_t> ranks,
                                    const TruncationStrategy& strategy = {}, TruncationLog* log = nullptr);

/// Full tensor by left-to-right contraction, O(n^d r).
[[nodiscard]] DenseTensor tt_reconstruct(const TTDecomposition& t);

/// Single entry at a 1-based multi-index, O(d r^2) work.
[[nodiscard]] double tt_element(const TTDecomposition& t, std::span<const std::size_t> index);

struct TTApproximation {
    TTDecomposition decomposition;
    DenseTensor approximation;  ///< reconstruction of `decomposition`
    ConvergenceTrace trace;
};

/// Alternating projections between the nonnegative orthant and TTSVD, with
/// the same trace and seeding conventions as nsthosvd (label
/// "nttsvd.iteration").
[[nodiscard]] TTApproximation nttsvd(const DenseTensor& x, std::span<const std::size_t> ranks,
                                     const SolverOptions& options, const TruncationStrategy& strategy = {});

}  // namespace nlrta
