// SPDX-License-Identifier: MIT
#include "nlrta/metrics.hpp"

#include "nlrta/error.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace nlrta {

namespace {

void require_same_shape(const DenseTensor& x, const DenseTensor& y) {
    if (x.shape() != y.shape()) throw ShapeError("metric inputs differ in shape");
}

// Symmetric (edge-repeating) reflection of index i into [0, n).
std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
    const auto period = static_cast<std::ptrdiff_t>(2 * n);
    std::ptrdiff_t m = i % period;
    if (m < 0) m += period;
    return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(n) ? m : period - 1 - m);
}

std::vector<double> gaussian_kernel(std::size_t size, double sigma) {
    std::vector<double> k(size);
    const double center = (static_cast<double>(size) - 1.0) / 2.0;
    for (std::size_t i = 0; i < size; ++i) {
        const double t = static_cast<double>(i) - center;
        k[i] = std::exp(-t * t / (2.0 * sigma * sigma));
    }
    const double sum = std::accumulate(k.begin(), k.end(), 0.0);
    for (double& v : k) v /= sum;
    return k;
}

// Separable same-size filtering with symmetric padding.
std::vector<double> filter(const std::vector<double>& img, std::size_t rows, std::size_t cols,
                           const std::vector<double>& k) {
    const auto half = static_cast<std::ptrdiff_t>(k.size() / 2);
    std::vector<double> tmp(img.size());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double s = 0.0;
            for (std::size_t t = 0; t < k.size(); ++t) {
                s += k[t] * img[r * cols + reflect(static_cast<std::ptrdiff_t>(c) + static_cast<std::ptrdiff_t>(t) - half, cols)];
            }
            tmp[r * cols + c] = s;
        }
    }
    std::vector<double> out(img.size());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double s = 0.0;
            for (std::size_t t = 0; t < k.size(); ++t) {
                s += k[t] * tmp[reflect(static_cast<std::ptrdiff_t>(r) + static_cast<std::ptrdiff_t>(t) - half, rows) * cols + c];
            }
            out[r * cols + c] = s;
        }
    }
    return out;
}

}  // namespace

RelativeErrors relative_errors(const DenseTensor& x, const DenseTensor& y) {
    require_same_shape(x, y);
    const double nf = frobenius_norm(x);
    const double nc = chebyshev_norm(x);
    if (nf == 0.0) throw ArgumentError("relative error against a zero reference");
    return {frobenius_distance(x, y) / nf, chebyshev_distance(x, y) / nc};
}

double r_squared(const DenseTensor& x, const DenseTensor& y) {
    require_same_shape(x, y);
    const auto v = x.data();
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double total = 0.0;
    for (double e : v) total += (e - mean) * (e - mean);
    if (total == 0.0) throw ArgumentError("R^2 is undefined for a constant reference");
    const double resid = frobenius_distance(x, y);
    return 1.0 - resid * resid / total;
}

double ssim_image(std::span<const double> x, std::span<const double> y, std::size_t rows, std::size_t cols,
                  const SsimParams& params) {
    if (x.size() != rows * cols || y.size() != rows * cols) throw ShapeError("SSIM image size mismatch");
    if (rows == 0 || cols == 0) throw ShapeError("SSIM of an empty image");
    if (params.window == 0 || !(params.sigma > 0.0)) throw ArgumentError("invalid SSIM window");
    const std::vector<double> k = gaussian_kernel(params.window, params.sigma);
    const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
    const double c2 = std::pow(params.k2 * params.dynamic_range, 2);

    const std::size_t n = rows * cols;
    std::vector<double> xx(n), yy(n), xy(n);
    const std::vector<double> xv(x.begin(), x.end());
    const std::vector<double> yv(y.begin(), y.end());
    for (std::size_t i = 0; i < n; ++i) {
        xx[i] = xv[i] * xv[i];
        yy[i] = yv[i] * yv[i];
        xy[i] = xv[i] * yv[i];
    }
    const auto mx = filter(xv, rows, cols, k);
    const auto my = filter(yv, rows, cols, k);
    const auto mxx = filter(xx, rows, cols, k);
    const auto myy = filter(yy, rows, cols, k);
    const auto mxy = filter(xy, rows, cols, k);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double vx = mxx[i] - mx[i] * mx[i];
        const double vy = myy[i] - my[i] * my[i];
        const double cxy = mxy[i] - mx[i] * my[i];
        sum += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cxy + c2)) /
               ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
    }
    return sum / static_cast<double>(n);
}

double ssim_bandwise_mean(const DenseTensor& x, const DenseTensor& y, const SsimParams& params) {
    require_same_shape(x, y);
    if (x.ndims() != 3) throw ShapeError("band-wise SSIM needs a 3-D cube");
    const std::size_t rows = x.shape()[0];
    const std::size_t cols = x.shape()[1];
    const std::size_t bands = x.shape()[2];
    std::vector<double> bx(rows * cols), by(rows * cols);
    double sum = 0.0;
    for (std::size_t b = 0; b < bands; ++b) {
        for (std::size_t p = 0; p < rows * cols; ++p) {
            bx[p] = x.data()[p * bands + b];
            by[p] = y.data()[p * bands + b];
        }
        sum += ssim_image(bx, by, rows, cols, params);
    }
    return sum / static_cast<double>(bands);
}

QualityReport quality_report(const DenseTensor& x, const DenseTensor& y) {
    const RelativeErrors e = relative_errors(x, y);
    QualityReport q;
    q.rel_err_frobenius = e.frobenius;
    q.rel_err_chebyshev = e.chebyshev;
    try {
        q.r_squared = r_squared(x, y);
    } catch (const ArgumentError&) {
        q.r_squared = e.frobenius == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    if (x.ndims() == 3) q.ssim_bandwise_mean = ssim_bandwise_mean(x, y);
    q.negativity = negativity_stats(y);
    return q;
}

}  // namespace nlrta
