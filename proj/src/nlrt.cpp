// SPDX-License-Identifier: MIT
#include "nlrta/nlrt.hpp"

#include "nlrta/error.hpp"
#include "nlrta/svd.hpp"

#include <algorithm>
#include <string>

namespace nlrta {

namespace {

DenseTensor component_mean(const std::vector<DenseTensor>& components, bool nonneg_first) {
    DenseTensor sum(components.front().shape());
    auto acc = sum.data();
    for (const DenseTensor& c : components) {
        const auto v = c.data();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += nonneg_first ? std::max(v[i], 0.0) : v[i];
    }
    const double scale = 1.0 / static_cast<double>(components.size());
    for (double& a : acc) a *= scale;
    return sum;
}

DenseTensor truncate_mode(const DenseTensor& y, std::size_t k, std::size_t r) {
    if (k == 1) {
        const std::size_t rows = y.shape()[0];
        const TruncatedSVD svd = truncated_svd(y.as_matrix(rows, y.size() / rows), r);
        const Matrix low = svd.U * svd.weighted_vt();
        return DenseTensor(y.shape(), std::vector<double>(low.data(), low.data() + low.size()));
    }
    const TruncatedSVD svd = truncated_svd(unfold(y, k), r);
    return fold(svd.U * svd.weighted_vt(), k, y.shape());
}

}  // namespace

NlrtState NlrtState::from_input(const DenseTensor& x, std::span<const std::size_t> ranks) {
    NlrtState s;
    s.components.assign(x.ndims(), x);
    s.ranks.assign(ranks.begin(), ranks.end());
    s.validate();
    return s;
}

void NlrtState::validate() const {
    if (components.empty()) throw ShapeError("NLRT state has no components");
    const std::size_t d = components.front().ndims();
    if (components.size() != d) {
        throw ShapeError("NLRT state needs " + std::to_string(d) + " components, got " +
                         std::to_string(components.size()));
    }
    if (ranks.size() != d) throw ShapeError("NLRT state needs one rank per mode");
    for (const DenseTensor& c : components) {
        if (c.shape() != components.front().shape()) throw ShapeError("NLRT components differ in shape");
    }
    for (std::size_t r : ranks) {
        if (r == 0) throw ArgumentError("NLRT ranks must be positive");
    }
}

NlrtResult nlrt_iterate(NlrtState state, const DenseTensor& reference, const SolverOptions& options) {
    state.validate();
    if (reference.shape() != state.components.front().shape()) {
        throw ShapeError("NLRT reference shape differs from the components");
    }
    const double ref_f = frobenius_norm(reference);
    const double ref_c = chebyshev_norm(reference);
    if (ref_f == 0.0) throw ArgumentError("cannot approximate the zero tensor");

    const std::size_t d = state.components.size();
    NlrtResult out;
    out.traces.resize(d);
    Stopwatch clock;
    for (std::size_t i = 1; i <= options.iterations; ++i) {
        clock.start();
        DenseTensor y = component_mean(state.components, false);
        nonneg_project_inplace(y);
        for (std::size_t k = 1; k <= d; ++k) state.components[k - 1] = truncate_mode(y, k, state.ranks[k - 1]);
        clock.stop();
        bool below = options.stop_tolerance.has_value();
        for (std::size_t k = 0; k < d; ++k) {
            out.traces[k].rows.push_back(
                measure_iterate(i, state.components[k], reference, ref_f, ref_c, clock.seconds()));
            if (below && !(out.traces[k].back().negativity.frobenius < *options.stop_tolerance)) below = false;
        }
        if (below) break;
    }
    out.state = std::move(state);
    return out;
}

TuckerDecomposition nlrt_auxiliary(const NlrtState& state) {
    state.validate();
    return sthosvd(component_mean(state.components, true), state.ranks);
}

}  // namespace nlrta
