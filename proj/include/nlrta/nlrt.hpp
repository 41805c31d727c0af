// SPDX-License-Identifier: MIT
#pragma once

#include "nlrta/tensor.hpp"
#include "nlrta/trace.hpp"
#include "nlrta/tucker.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nlrta {

/// Tuple (X_1, ..., X_d) of same-shape tensors, component k constrained in
/// its mode-k unfolding rank.
struct NlrtState {
    std::vector<DenseTensor> components;
    std::vector<std::size_t> ranks;

    /// Every component set to `x`.
    static NlrtState from_input(const DenseTensor& x, std::span<const std::size_t> ranks);
    /// Throws ShapeError unless there are d components of equal shape and d ranks.
    void validate() const;
};

struct NlrtResult {
    NlrtState state;
    std::vector<ConvergenceTrace> traces;  ///< one per component
};

/// Consensus alternating projections. Each iteration replaces every
/// component by Y = max(mean_k X_k, 0), then X_k by the rank-r_k truncation
/// of its mode-k unfolding. Trace rows are measured on the truncated
/// components against `reference`. With a stop tolerance, iteration ends
/// once every component's negativity (Frobenius) is below it.
[[nodiscard]] NlrtResult nlrt_iterate(NlrtState state, const DenseTensor& reference, const SolverOptions& options);

/// Deterministic STHOSVD of mean_k max(X_k, 0) at the state's ranks.
[[nodiscard]] TuckerDecomposition nlrt_auxiliary(const NlrtState& state);

}  // namespace nlrta
