// SPDX-License-Identifier: MIT
#include "nlrta/svd.hpp"

#include "nlrta/error.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlrta {

namespace {

using ColMatrix = Eigen::MatrixXd;

// Largest-magnitude entry of every column of U made positive.
void normalize_signs(Matrix& u, Matrix& vt) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        Eigen::Index best = 0;
        double best_abs = -1.0;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            const double v = std::abs(u(i, j));
            if (v > best_abs) {
                best_abs = v;
                best = i;
            }
        }
        if (u(best, j) < 0.0) {
            u.col(j) = -u.col(j);
            vt.row(j) = -vt.row(j);
        }
    }
}

// rows x min(rows, cols) orthonormal columns spanning range(z).
ColMatrix orthonormal_basis(const ColMatrix& z) {
    Eigen::HouseholderQR<ColMatrix> qr(z);
    ColMatrix q = ColMatrix::Identity(z.rows(), std::min(z.rows(), z.cols()));
    q.applyOnTheLeft(qr.householderQ());
    return q;
}

// Full SVD of a small square matrix, U and V both square.
Eigen::BDCSVD<ColMatrix> square_svd(const ColMatrix& r) {
    Eigen::BDCSVD<ColMatrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
    return svd;
}

}  // namespace

Matrix TruncatedSVD::weighted_vt() const { return S.asDiagonal() * Vt; }

Matrix TruncatedSVD::reconstruct() const { return U * S.asDiagonal() * Vt; }

std::string TruncationStrategy::label() const {
    switch (kind) {
        case TruncationKind::Deterministic:
            return "SVD_r";
        case TruncationKind::HMT:
            return "HMT(" + std::to_string(p) + ", " + std::to_string(k) + ")";
        case TruncationKind::Tropp:
            return "Tropp(" + std::to_string(k) + ", " + std::to_string(l) + ")";
    }
    return "unknown";
}

void TruncationStrategy::validate(std::size_t r) const {
    switch (kind) {
        case TruncationKind::Deterministic:
            return;
        case TruncationKind::HMT:
            if (k < r) {
                throw ArgumentError("HMT sketch size k=" + std::to_string(k) + " is below target rank " +
                                    std::to_string(r));
            }
            return;
        case TruncationKind::Tropp:
            if (k < r) {
                throw ArgumentError("Tropp range sketch size k=" + std::to_string(k) +
                                    " is below target rank " + std::to_string(r));
            }
            if (l < k) {
                throw ArgumentError("Tropp co-range sketch size l=" + std::to_string(l) +
                                    " is below range sketch size k=" + std::to_string(k));
            }
            return;
    }
}

TruncatedSVD truncated_svd(const Eigen::Ref<const Matrix>& a, std::size_t r) {
    if (r == 0) throw ArgumentError("truncation rank must be at least 1");
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    if (m == 0 || n == 0) throw ShapeError("cannot truncate an empty matrix");
    if (!a.allFinite()) throw NumericalError("matrix contains a non-finite entry");
    const Eigen::Index rr = std::min<Eigen::Index>(static_cast<Eigen::Index>(r), std::min(m, n));

    TruncatedSVD out;
    if (m == n) {
        auto svd = square_svd(a);
        out.U = svd.matrixU().leftCols(rr);
        out.S = svd.singularValues().head(rr);
        out.Vt = svd.matrixV().leftCols(rr).transpose();
    } else if (m > n) {
        // A = Q R, R = W S Z^T  =>  U = Q W
        Eigen::HouseholderQR<ColMatrix> qr(a);
        ColMatrix rfac = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
        auto svd = square_svd(rfac);
        ColMatrix u = ColMatrix::Zero(m, rr);
        u.topRows(n) = svd.matrixU().leftCols(rr);
        u.applyOnTheLeft(qr.householderQ());
        out.U = u;
        out.S = svd.singularValues().head(rr);
        out.Vt = svd.matrixV().leftCols(rr).transpose();
    } else {
        // A^T = Q R  =>  A = R^T Q^T, R^T = W S Z^T  =>  V = Q Z
        Eigen::HouseholderQR<ColMatrix> qr(a.transpose());
        ColMatrix rt = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>().transpose();
        auto svd = square_svd(rt);
        ColMatrix v = ColMatrix::Zero(n, rr);
        v.topRows(m) = svd.matrixV().leftCols(rr);
        v.applyOnTheLeft(qr.householderQ());
        out.U = svd.matrixU().leftCols(rr);
        out.S = svd.singularValues().head(rr);
        out.Vt = v.transpose();
    }
    normalize_signs(out.U, out.Vt);
    return out;
}

Matrix rademacher_matrix(std::size_t rows, std::size_t cols, CounterRng rng) {
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    double* out = m.data();
    for (std::size_t i = 0; i < rows * cols; ++i) out[i] = (rng.next() >> 63) ? -1.0 : 1.0;
    return m;
}

Matrix randomized_range(const Eigen::Ref<const Matrix>& a, std::size_t k, std::size_t p, CounterRng rng) {
    if (k == 0) throw ArgumentError("sketch size must be at least 1");
    if (!a.allFinite()) throw NumericalError("matrix contains a non-finite entry");
    const auto m = static_cast<std::size_t>(a.rows());
    const auto n = static_cast<std::size_t>(a.cols());
    const std::size_t kk = std::min(k, m);

    // k >= n: Psi = I, so range(Z) is range(A) exactly.
    ColMatrix z1 = kk >= n ? ColMatrix(a) : ColMatrix(a * rademacher_matrix(n, kk, rng));
    ColMatrix q = orthonormal_basis(z1);
    for (std::size_t j = 0; j < p; ++j) {
        ColMatrix z2t = a.transpose() * q;  // (Q^T A)^T
        q = orthonormal_basis(z2t);
        z1.noalias() = a * q;
        q = orthonormal_basis(z1);
    }
    return q;
}

TruncatedSVD hmt_svd(const Eigen::Ref<const Matrix>& a, std::size_t r, std::size_t k, std::size_t p,
                     CounterRng rng) {
    if (r == 0) throw ArgumentError("truncation rank must be at least 1");
    const auto mn = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
    const std::size_t rr = std::min(r, mn);
    TruncationStrategy::hmt(p, k).validate(rr);

    const Matrix q = randomized_range(a, k, p, rng);
    const Matrix z = q.transpose() * a;
    TruncatedSVD small = truncated_svd(z, rr);
    TruncatedSVD out;
    out.U = q * small.U;
    out.S = std::move(small.S);
    out.Vt = std::move(small.Vt);
    normalize_signs(out.U, out.Vt);
    return out;
}

TruncatedSVD tropp_svd(const Eigen::Ref<const Matrix>& a, std::size_t r, std::size_t k, std::size_t l,
                       CounterRng rng) {
    if (r == 0) throw ArgumentError("truncation rank must be at least 1");
    const auto m = static_cast<std::size_t>(a.rows());
    const auto n = static_cast<std::size_t>(a.cols());
    const std::size_t rr = std::min(r, std::min(m, n));
    TruncationStrategy::tropp(k, l).validate(rr);
    if (!a.allFinite()) throw NumericalError("matrix contains a non-finite entry");
    const std::size_t kk = std::min(k, m);

    // Same k >= n rule as randomized_range; Phi's stream offset ignores it.
    const ColMatrix z = kk >= n ? ColMatrix(a) : ColMatrix(a * rademacher_matrix(n, kk, rng));
    rng.advance(n * kk);
    const Matrix phi = rademacher_matrix(l, m, rng);

    const ColMatrix q = orthonormal_basis(z);
    const ColMatrix w = phi * q;  // l x q.cols()
    Eigen::HouseholderQR<ColMatrix> qr_w(w);
    const Eigen::Index ki = q.cols();
    const ColMatrix t = qr_w.matrixQR().topRows(ki).triangularView<Eigen::Upper>();
    double tmax = 0.0;
    double tmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < ki; ++i) {
        tmax = std::max(tmax, std::abs(t(i, i)));
        tmin = std::min(tmin, std::abs(t(i, i)));
    }
    const double tol =
        static_cast<double>(std::max<Eigen::Index>(static_cast<Eigen::Index>(l), ki)) *
        std::numeric_limits<double>::epsilon() * tmax;
    if (!(tmin > tol)) {
        throw NumericalError("Tropp sketch: Phi*Q is numerically rank deficient; retry with another seed");
    }
    ColMatrix pfac = ColMatrix::Identity(static_cast<Eigen::Index>(l), ki);
    pfac.applyOnTheLeft(qr_w.householderQ());

    const ColMatrix y = phi * a;  // l x n
    ColMatrix g = pfac.transpose() * y;
    t.triangularView<Eigen::Upper>().solveInPlace(g);

    TruncatedSVD small = truncated_svd(g, rr);
    TruncatedSVD out;
    out.U = q * small.U;
    out.S = std::move(small.S);
    out.Vt = std::move(small.Vt);
    normalize_signs(out.U, out.Vt);
    return out;
}

TruncatedSVD truncate(const Eigen::Ref<const Matrix>& a, std::size_t r, const TruncationStrategy& strategy,
                      std::uint64_t call_seed) {
    switch (strategy.kind) {
        case TruncationKind::Deterministic:
            return truncated_svd(a, r);
        case TruncationKind::HMT:
            return hmt_svd(a, r, strategy.k, strategy.p, CounterRng(call_seed));
        case TruncationKind::Tropp:
            return tropp_svd(a, r, strategy.k, strategy.l, CounterRng(call_seed));
    }
    throw ArgumentError("unknown truncation strategy");
}

}  // namespace nlrta
