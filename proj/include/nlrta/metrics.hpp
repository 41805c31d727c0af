// SPDX-License-Identifier: MIT
#pragma once

#include "nlrta/tensor.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace nlrta {

struct RelativeErrors {
    double frobenius = 0.0;
    double chebyshev = 0.0;
};

/// ||X - Y|| / ||X|| in the Frobenius and Chebyshev norms. Throws
/// ArgumentError when ||X|| == 0, ShapeError on a shape mismatch.
[[nodiscard]] RelativeErrors relative_errors(const DenseTensor& x, const DenseTensor& y);

/// 1 - ||X - Y||_F^2 / ||X - mean(X)||_F^2. Throws ArgumentError for constant X.
[[nodiscard]] double r_squared(const DenseTensor& x, const DenseTensor& y);

/// Single-scale SSIM parameters: Gaussian window, stability constants
/// (k1 L)^2 and (k2 L)^2, symmetric boundary padding.
struct SsimParams {
    std::size_t window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

/// SSIM of a 2-D image pair given as rows x cols row-major buffers.
[[nodiscard]] double ssim_image(std::span<const double> x, std::span<const double> y, std::size_t rows,
                                std::size_t cols, const SsimParams& params = {});

/// Mean over the last axis of the per-band SSIM of a 3-D cube pair.
[[nodiscard]] double ssim_bandwise_mean(const DenseTensor& x, const DenseTensor& y, const SsimParams& params = {});

struct QualityReport {
    double rel_err_frobenius = 0.0;
    double rel_err_chebyshev = 0.0;
    double r_squared = 0.0;
    std::optional<double> ssim_bandwise_mean;  ///< 3-D inputs only
    NegativityStats negativity;                ///< of the approximation
};

/// All metrics of approximation `y` against reference `x`. R^2 is 0 when x
/// is constant and y equals it, and -infinity otherwise.
[[nodiscard]] QualityReport quality_report(const DenseTensor& x, const DenseTensor& y);

}  // namespace nlrta
