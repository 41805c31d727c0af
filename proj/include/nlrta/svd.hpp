// SPDX-License-Identifier: MIT
#pragma once

#include "nlrta/random.hpp"
#include "nlrta/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace nlrta {

/// Rank-r factorization U * diag(S) * Vt.
///
/// U has orthonormal columns, Vt orthonormal rows, S is nonincreasing and
/// nonnegative. Each column of U is signed so that its largest-magnitude
/// entry (lowest index on ties) is positive; the matching row of Vt carries
/// the compensating sign.
struct TruncatedSVD {
    Matrix U;
    Vector S;
    Matrix Vt;

    [[nodiscard]] std::size_t rank() const noexcept { return static_cast<std::size_t>(S.size()); }
    /// diag(S) * Vt
    [[nodiscard]] Matrix weighted_vt() const;
    [[nodiscard]] Matrix reconstruct() const;
};

enum class TruncationKind { Deterministic, HMT, Tropp };

/// Backend used wherever a rank-r truncation is needed.
///
///   Deterministic  exact truncated SVD
///   HMT(p, k)      randomized subspace iteration with p power steps and a
///                  k-column sketch, then an exact SVD of Q^T A
///   Tropp(k, l)    two-sided sketch, range size k and co-range size l
struct TruncationStrategy {
    TruncationKind kind = TruncationKind::Deterministic;
    std::size_t k = 0;
    std::size_t p = 0;
    std::size_t l = 0;
    std::uint64_t seed = 0;

    static TruncationStrategy deterministic() { return {}; }
    static TruncationStrategy hmt(std::size_t power, std::size_t sketch, std::uint64_t seed = 0) {
        return {TruncationKind::HMT, sketch, power, 0, seed};
    }
    static TruncationStrategy tropp(std::size_t sketch, std::size_t cosketch, std::uint64_t seed = 0) {
        return {TruncationKind::Tropp, sketch, 0, cosketch, seed};
    }

    /// Same strategy with a different seed.
    [[nodiscard]] TruncationStrategy with_seed(std::uint64_t s) const {
        TruncationStrategy copy = *this;
        copy.seed = s;
        return copy;
    }

    /// "SVD_r", "HMT(1, 11)", "Tropp(6, 35)".
    [[nodiscard]] std::string label() const;
    /// Throws ArgumentError if the sketch sizes cannot serve target rank r.
    void validate(std::size_t r) const;
};

/// Exact rank-r truncated SVD; r is clamped to min(m, n) and zero singular
/// values are kept so the result has exactly min(r, m, n) components.
[[nodiscard]] TruncatedSVD truncated_svd(const Eigen::Ref<const Matrix>& a, std::size_t r);

/// rows x cols matrix of +-1, entry (i, j) taken from stream word
/// rng.counter() + i * cols + j: +1 when the word's top bit is clear.
[[nodiscard]] Matrix rademacher_matrix(std::size_t rows, std::size_t cols, CounterRng rng);

/// Orthonormal basis of range((A A^T)^p A Psi) with an n x min(k, m)
/// Rademacher Psi, or Psi = I when k >= n. At most min(k, m) columns.
[[nodiscard]] Matrix randomized_range(const Eigen::Ref<const Matrix>& a, std::size_t k, std::size_t p,
                                      CounterRng rng);

[[nodiscard]] TruncatedSVD hmt_svd(const Eigen::Ref<const Matrix>& a, std::size_t r, std::size_t k,
                                   std::size_t p, CounterRng rng);

/// Psi (n x min(k, m), or I when k >= n) takes the first n * min(k, m) words
/// of `rng`; Phi (l x m) continues the stream after them.
/// Throws NumericalError when Phi * Q is numerically rank deficient.
[[nodiscard]] TruncatedSVD tropp_svd(const Eigen::Ref<const Matrix>& a, std::size_t r, std::size_t k,
                                     std::size_t l, CounterRng rng);

/// Dispatches on the strategy. Randomized backends draw from CounterRng(call_seed).
[[nodiscard]] TruncatedSVD truncate(const Eigen::Ref<const Matrix>& a, std::size_t r,
                                    const TruncationStrategy& strategy, std::uint64_t call_seed);

}  // namespace nlrta
