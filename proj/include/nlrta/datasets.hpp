// SPDX-License-Identifier: MIT
#pragma once

#include "nlrta/tensor.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace nlrta {

/// X(i_1, ..., i_d) = 1 / (i_1 + ... + i_d - d + 1) with 1-based indices.
[[nodiscard]] DenseTensor hilbert_tensor(const Shape& shape);

struct GaussianComponent {
    double weight = 1.0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;  ///< symmetric positive definite
};

/// Mixture sampled on the grid x_m = -a + (i_m - 1) * 2a / (n - 1), m = 1..d.
struct GaussianMixtureSpec {
    std::size_t d = 0;
    std::size_t n = 0;
    double a = 1.0;
    std::vector<GaussianComponent> components;

    /// Throws ArgumentError for n < 2, a <= 0, no components, mismatched
    /// dimensions, or a covariance that is not symmetric with eigenvalues >= 1e-10.
    void validate() const;
};

/// Two-component 4-D mixture with unit weights, means 0 and
/// (0.5, -0.5, 0.5, -0.5), used by the mixture experiments.
[[nodiscard]] GaussianMixtureSpec standard_mixture(std::size_t n, double a = 1.0);

/// Entry-wise sum_j w_j exp(-0.5 (x - mu_j)^T A_j^{-1} (x - mu_j)).
[[nodiscard]] DenseTensor gaussian_mixture_tensor(const GaussianMixtureSpec& spec);

struct RescaledTensor {
    DenseTensor tensor;
    double min = 0.0;
    double max = 0.0;
};

/// x <- (x - min) / (max - min). Throws ArgumentError for constant input.
[[nodiscard]] RescaledTensor rescale_unit_interval(const DenseTensor& x);

}  // namespace nlrta
