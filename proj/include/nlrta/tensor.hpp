// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nlrta {

/// Dense row-major matrix. Unfoldings and factors use this type so that
/// mode-1 unfoldings and matricizations can alias tensor storage.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixView = Eigen::Map<Matrix>;
using ConstMatrixView = Eigen::Map<const Matrix>;
using Vector = Eigen::VectorXd;

using Shape = std::vector<std::size_t>;

/// d-dimensional dense array of doubles, row-major (last index fastest).
///
/// Multi-indices passed to `at` are 1-based, matching the mode numbering used
/// by unfold/fold/mode_k_product.
class DenseTensor {
public:
    /// A 1-element tensor of shape (1) holding 0.
    DenseTensor();
    explicit DenseTensor(Shape shape, double fill = 0.0);
    DenseTensor(Shape shape, std::vector<double> data);

    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t ndims() const noexcept { return shape_.size(); }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    /// Extent of mode k (1-based).
    [[nodiscard]] std::size_t extent(std::size_t k) const;

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return data_; }

    [[nodiscard]] double at(std::span<const std::size_t> index) const;
    [[nodiscard]] double& at(std::span<const std::size_t> index);
    [[nodiscard]] double at(std::initializer_list<std::size_t> index) const {
        return at(std::span<const std::size_t>(index.begin(), index.size()));
    }
    [[nodiscard]] double& at(std::initializer_list<std::size_t> index) {
        return at(std::span<const std::size_t>(index.begin(), index.size()));
    }

    /// Row-major flat offset of a 1-based multi-index.
    [[nodiscard]] std::size_t offset(std::span<const std::size_t> index) const;

    /// Same data under a new shape with the same number of elements.
    [[nodiscard]] DenseTensor reshaped(Shape shape) const&;
    [[nodiscard]] DenseTensor reshaped(Shape shape) &&;

    /// Contiguous matrix view of the raw buffer as rows x cols.
    [[nodiscard]] ConstMatrixView as_matrix(std::size_t rows, std::size_t cols) const;

    friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

private:
    Shape shape_;
    std::vector<double> data_;
};

[[nodiscard]] std::size_t num_elements(const Shape& shape);

/// Mode-k unfolding: rows indexed by i_k, columns by the remaining indices
/// in ascending mode order (last fastest). Always a copy.
[[nodiscard]] Matrix unfold(const DenseTensor& x, std::size_t k);

/// Inverse of unfold. `shape` is the target tensor shape.
[[nodiscard]] DenseTensor fold(const Eigen::Ref<const Matrix>& m, std::size_t k, const Shape& shape);

/// k-th matricization: (n_1...n_k) x (n_{k+1}...n_d) reshape, no permutation.
[[nodiscard]] Matrix matricize(const DenseTensor& x, std::size_t k);
/// Copy-free variant of matricize; the view aliases `x`.
[[nodiscard]] ConstMatrixView matricize_view(const DenseTensor& x, std::size_t k);

/// Y = X x_k U, i.e. unfold(Y, k) == U * unfold(X, k).
[[nodiscard]] DenseTensor mode_k_product(const DenseTensor& x, const Eigen::Ref<const Matrix>& u,
                                         std::size_t k);

[[nodiscard]] double frobenius_norm(const DenseTensor& x);
[[nodiscard]] double chebyshev_norm(const DenseTensor& x);
[[nodiscard]] double frobenius_inner(const DenseTensor& x, const DenseTensor& y);
/// ||X - Y||_F without materializing the difference.
[[nodiscard]] double frobenius_distance(const DenseTensor& x, const DenseTensor& y);
/// ||X - Y||_C without materializing the difference.
[[nodiscard]] double chebyshev_distance(const DenseTensor& x, const DenseTensor& y);

/// Entry-wise max(X, 0): the Frobenius-nearest nonnegative tensor.
[[nodiscard]] DenseTensor nonneg_project(const DenseTensor& x);
void nonneg_project_inplace(DenseTensor& x);

struct NegativityStats {
    double frobenius = 0.0;  ///< ||min(X, 0)||_F
    double chebyshev = 0.0;  ///< ||min(X, 0)||_C
    double fraction = 0.0;   ///< (#entries < 0) / #entries
};

[[nodiscard]] NegativityStats negativity_stats(const DenseTensor& x);

/// Throws NumericalError if any entry is NaN or infinite.
void require_finite(std::span<const double> values, const char* what);

}  // namespace nlrta
