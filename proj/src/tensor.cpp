// SPDX-License-Identifier: MIT
#include "nlrta/tensor.hpp"

#include "nlrta/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nlrta {

namespace {

void check_mode(const Shape& shape, std::size_t k) {
    if (k < 1 || k > shape.size()) {
        throw ShapeError("mode " + std::to_string(k) + " out of range for a " +
                         std::to_string(shape.size()) + "-dimensional tensor");
    }
}

void check_same_shape(const DenseTensor& x, const DenseTensor& y) {
    if (x.shape() != y.shape()) throw ShapeError("tensor shapes differ");
}

// Extents before mode k, at mode k, after mode k.
struct Split {
    std::size_t left = 1;
    std::size_t mid = 1;
    std::size_t right = 1;
};

Split split_at(const Shape& shape, std::size_t k) {
    Split s;
    for (std::size_t j = 0; j + 1 < k; ++j) s.left *= shape[j];
    s.mid = shape[k - 1];
    for (std::size_t j = k; j < shape.size(); ++j) s.right *= shape[j];
    return s;
}

}  // namespace

std::size_t num_elements(const Shape& shape) {
    if (shape.empty()) throw ShapeError("a tensor needs at least one mode");
    std::size_t total = 1;
    for (std::size_t n : shape) {
        if (n == 0) throw ShapeError("tensor extents must be positive");
        if (total > std::numeric_limits<std::size_t>::max() / n) {
            throw ShapeError("tensor element count overflows");
        }
        total *= n;
    }
    return total;
}

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) throw NumericalError(std::string(what) + " contains a non-finite entry");
    }
}

DenseTensor::DenseTensor() : shape_{1}, data_(1, 0.0) {}

DenseTensor::DenseTensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(num_elements(shape_), fill) {}

DenseTensor::DenseTensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (num_elements(shape_) != data_.size()) {
        throw ShapeError("data length " + std::to_string(data_.size()) +
                         " does not match the product of the extents");
    }
}

std::size_t DenseTensor::extent(std::size_t k) const {
    check_mode(shape_, k);
    return shape_[k - 1];
}

std::size_t DenseTensor::offset(std::span<const std::size_t> index) const {
    if (index.size() != shape_.size()) throw ShapeError("index arity does not match tensor order");
    std::size_t flat = 0;
    for (std::size_t j = 0; j < shape_.size(); ++j) {
        if (index[j] < 1 || index[j] > shape_[j]) throw ShapeError("index out of bounds");
        flat = flat * shape_[j] + (index[j] - 1);
    }
    return flat;
}

double DenseTensor::at(std::span<const std::size_t> index) const { return data_[offset(index)]; }

double& DenseTensor::at(std::span<const std::size_t> index) { return data_[offset(index)]; }

DenseTensor DenseTensor::reshaped(Shape shape) const& {
    return DenseTensor(std::move(shape), data_);
}

DenseTensor DenseTensor::reshaped(Shape shape) && {
    return DenseTensor(std::move(shape), std::move(data_));
}

ConstMatrixView DenseTensor::as_matrix(std::size_t rows, std::size_t cols) const {
    if (rows * cols != data_.size()) throw ShapeError("matrix view does not cover the tensor");
    return ConstMatrixView(data_.data(), static_cast<Eigen::Index>(rows),
                           static_cast<Eigen::Index>(cols));
}

Matrix unfold(const DenseTensor& x, std::size_t k) {
    check_mode(x.shape(), k);
    const Split s = split_at(x.shape(), k);
    Matrix m(static_cast<Eigen::Index>(s.mid), static_cast<Eigen::Index>(s.left * s.right));
    const double* src = x.data().data();
    // X(l, i, r) -> M(i, l * right + r)
    for (std::size_t l = 0; l < s.left; ++l) {
        for (std::size_t i = 0; i < s.mid; ++i) {
            const double* from = src + (l * s.mid + i) * s.right;
            double* to = m.data() + i * (s.left * s.right) + l * s.right;
            std::copy(from, from + s.right, to);
        }
    }
    return m;
}

DenseTensor fold(const Eigen::Ref<const Matrix>& m, std::size_t k, const Shape& shape) {
    check_mode(shape, k);
    const Split s = split_at(shape, k);
    if (static_cast<std::size_t>(m.rows()) != s.mid ||
        static_cast<std::size_t>(m.cols()) != s.left * s.right) {
        throw ShapeError("matrix of size " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " cannot be folded into the requested shape at mode " + std::to_string(k));
    }
    DenseTensor x(shape);
    double* dst = x.data().data();
    for (std::size_t l = 0; l < s.left; ++l) {
        for (std::size_t i = 0; i < s.mid; ++i) {
            for (std::size_t r = 0; r < s.right; ++r) {
                dst[(l * s.mid + i) * s.right + r] =
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l * s.right + r));
            }
        }
    }
    return x;
}

ConstMatrixView matricize_view(const DenseTensor& x, std::size_t k) {
    if (k < 1 || k + 1 > x.ndims()) {
        throw ShapeError("matricization split " + std::to_string(k) + " out of range for a " +
                         std::to_string(x.ndims()) + "-dimensional tensor");
    }
    std::size_t rows = 1;
    for (std::size_t j = 0; j < k; ++j) rows *= x.shape()[j];
    return x.as_matrix(rows, x.size() / rows);
}

Matrix matricize(const DenseTensor& x, std::size_t k) { return matricize_view(x, k); }

DenseTensor mode_k_product(const DenseTensor& x, const Eigen::Ref<const Matrix>& u, std::size_t k) {
    check_mode(x.shape(), k);
    const Split s = split_at(x.shape(), k);
    if (static_cast<std::size_t>(u.cols()) != s.mid) {
        throw ShapeError("mode-" + std::to_string(k) + " product: matrix has " + std::to_string(u.cols()) +
                         " columns, tensor extent is " + std::to_string(s.mid));
    }
    Shape out_shape = x.shape();
    out_shape[k - 1] = static_cast<std::size_t>(u.rows());
    DenseTensor y(out_shape);
    const auto m = static_cast<Eigen::Index>(u.rows());
    const auto n = static_cast<Eigen::Index>(s.mid);
    const auto right = static_cast<Eigen::Index>(s.right);
    const auto left = static_cast<Eigen::Index>(s.left);
    if (s.right == 1) {
        // Y (left x m) = X (left x n) * U^T
        ConstMatrixView xs(x.data().data(), left, n);
        MatrixView ys(y.data().data(), left, m);
        ys.noalias() = xs * u.transpose();
        return y;
    }
    for (Eigen::Index l = 0; l < left; ++l) {
        ConstMatrixView xs(x.data().data() + l * n * right, n, right);
        MatrixView ys(y.data().data() + l * m * right, m, right);
        ys.noalias() = u * xs;
    }
    return y;
}

double frobenius_norm(const DenseTensor& x) {
    double sum = 0.0;
    for (double v : x.data()) sum += v * v;
    return std::sqrt(sum);
}

double chebyshev_norm(const DenseTensor& x) {
    double best = 0.0;
    for (double v : x.data()) best = std::max(best, std::abs(v));
    return best;
}

double frobenius_inner(const DenseTensor& x, const DenseTensor& y) {
    check_same_shape(x, y);
    double sum = 0.0;
    const auto a = x.data();
    const auto b = y.data();
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

double frobenius_distance(const DenseTensor& x, const DenseTensor& y) {
    check_same_shape(x, y);
    double sum = 0.0;
    const auto a = x.data();
    const auto b = y.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double chebyshev_distance(const DenseTensor& x, const DenseTensor& y) {
    check_same_shape(x, y);
    double best = 0.0;
    const auto a = x.data();
    const auto b = y.data();
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

void nonneg_project_inplace(DenseTensor& x) {
    for (double& v : x.data()) v = std::max(v, 0.0);
}

DenseTensor nonneg_project(const DenseTensor& x) {
    DenseTensor y = x;
    nonneg_project_inplace(y);
    return y;
}

NegativityStats negativity_stats(const DenseTensor& x) {
    NegativityStats stats;
    std::size_t count = 0;
    for (double v : x.data()) {
        if (v < 0.0) {
            stats.chebyshev = std::max(stats.chebyshev, -v);
            ++count;
        }
    }
    if (count == 0) return stats;
    // Scaled by the largest magnitude so tiny negatives cannot underflow to a zero norm.
    double sum = 0.0;
    for (double v : x.data()) {
        if (v < 0.0) {
            const double t = v / stats.chebyshev;
            sum += t * t;
        }
    }
    stats.frobenius = stats.chebyshev * std::sqrt(sum);
    stats.fraction = static_cast<double>(count) / static_cast<double>(x.size());
    return stats;
}

}  // namespace nlrta
