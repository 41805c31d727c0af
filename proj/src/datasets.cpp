// SPDX-License-Identifier: MIT
#include "nlrta/datasets.hpp"

#include "nlrta/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace nlrta {

DenseTensor hilbert_tensor(const Shape& shape) {
    DenseTensor x(shape);
    const std::size_t d = shape.size();
    std::vector<std::size_t> idx(d, 0);  // 0-based odometer
    std::size_t sum = 0;
    for (double& v : x.data()) {
        v = 1.0 / static_cast<double>(sum + 1);
        for (std::size_t m = d; m-- > 0;) {
            if (++idx[m] < shape[m]) {
                ++sum;
                break;
            }
            sum -= idx[m] - 1;
            idx[m] = 0;
        }
    }
    return x;
}

void GaussianMixtureSpec::validate() const {
    if (d == 0) throw ArgumentError("mixture dimension must be positive");
    if (n < 2) throw ArgumentError("mixture grid needs n >= 2");
    if (!(a > 0.0)) throw ArgumentError("mixture half-width must be positive");
    if (components.empty()) throw ArgumentError("mixture has no components");
    for (const GaussianComponent& c : components) {
        if (static_cast<std::size_t>(c.mean.size()) != d || static_cast<std::size_t>(c.covariance.rows()) != d ||
            static_cast<std::size_t>(c.covariance.cols()) != d) {
            throw ArgumentError("mixture component dimensions do not match d");
        }
        if (!c.covariance.isApprox(c.covariance.transpose(), 1e-12)) {
            throw ArgumentError("mixture covariance is not symmetric");
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c.covariance, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() < 1e-10) {
            throw ArgumentError("mixture covariance is not positive definite");
        }
    }
}

GaussianMixtureSpec standard_mixture(std::size_t n, double a) {
    GaussianMixtureSpec spec;
    spec.d = 4;
    spec.n = n;
    spec.a = a;
    GaussianComponent c1;
    c1.mean = Eigen::Vector4d::Zero();
    c1.covariance.resize(4, 4);
    c1.covariance << 0.403, 0.236, 0.159, 0.188,
                     0.236, 0.422, 0.193, 0.313,
                     0.159, 0.193, 0.124, 0.164,
                     0.188, 0.313, 0.164, 0.288;
    GaussianComponent c2;
    c2.mean = Eigen::Vector4d(0.5, -0.5, 0.5, -0.5);
    c2.covariance.resize(4, 4);
    c2.covariance << 0.173, 0.229, 0.200, 0.191,
                     0.229, 0.347, 0.254, 0.201,
                     0.200, 0.254, 0.348, 0.252,
                     0.191, 0.201, 0.252, 0.360;
    spec.components = {c1, c2};
    return spec;
}

DenseTensor gaussian_mixture_tensor(const GaussianMixtureSpec& spec) {
    spec.validate();
    const std::size_t d = spec.d;
    const double step = 2.0 * spec.a / static_cast<double>(spec.n - 1);
    // Quadratic form via the Cholesky factor: ||L^{-1} (x - mu)||^2.
    std::vector<Eigen::MatrixXd> linv;
    for (const GaussianComponent& c : spec.components) {
        Eigen::LLT<Eigen::MatrixXd> llt(c.covariance);
        if (llt.info() != Eigen::Success) throw NumericalError("mixture covariance is singular");
        linv.push_back(llt.matrixL().solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d),
                                                                       static_cast<Eigen::Index>(d))));
    }
    DenseTensor x(Shape(d, spec.n));
    std::vector<std::size_t> idx(d, 0);
    Eigen::VectorXd point(static_cast<Eigen::Index>(d));
    Eigen::VectorXd diff(point.size());
    Eigen::VectorXd z(point.size());
    for (double& v : x.data()) {
        for (std::size_t m = 0; m < d; ++m) point(static_cast<Eigen::Index>(m)) = -spec.a + static_cast<double>(idx[m]) * step;
        double sum = 0.0;
        for (std::size_t j = 0; j < spec.components.size(); ++j) {
            diff.noalias() = point - spec.components[j].mean;
            z.noalias() = linv[j].triangularView<Eigen::Lower>() * diff;
            sum += spec.components[j].weight * std::exp(-0.5 * z.squaredNorm());
        }
        v = sum;
        for (std::size_t m = d; m-- > 0;) {
            if (++idx[m] < spec.n) break;
            idx[m] = 0;
        }
    }
    return x;
}

RescaledTensor rescale_unit_interval(const DenseTensor& x) {
    require_finite(x.data(), "rescale input");
    const auto [lo, hi] = std::minmax_element(x.data().begin(), x.data().end());
    RescaledTensor out{x, *lo, *hi};
    if (!(out.max > out.min)) throw ArgumentError("cannot rescale a constant tensor");
    const double span = out.max - out.min;
    for (double& v : out.tensor.data()) v = (v - out.min) / span;
    return out;
}

}  // namespace nlrta
