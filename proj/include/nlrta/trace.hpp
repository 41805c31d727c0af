// SPDX-License-Identifier: MIT
#pragma once

#include "nlrta/tensor.hpp"

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nlrta {

/// Metrics of one alternating-projection iterate against the original data.
struct TraceRow {
    std::size_t iteration = 0;
    NegativityStats negativity;
    double rel_err_frobenius = 0.0;
    double rel_err_chebyshev = 0.0;
    double elapsed_s = 0.0;  ///< cumulative solver time up to this iteration
};

struct ConvergenceTrace {
    std::vector<TraceRow> rows;

    static constexpr const char* kCsvHeader =
        "iteration,neg_frobenius,neg_chebyshev,neg_fraction,rel_err_frobenius,rel_err_chebyshev,elapsed_s";

    [[nodiscard]] bool empty() const noexcept { return rows.empty(); }
    [[nodiscard]] const TraceRow& back() const { return rows.back(); }

    /// Writes the header and one row per iteration. Values use 17 significant
    /// digits so they parse back bit-exactly. With `include_timing == false`
    /// the elapsed_s column is written as 0.
    void write_csv(std::ostream& out, bool include_timing = true) const;
    static ConvergenceTrace read_csv(std::istream& in);
};

/// Wall time of each iteration, i.e. successive differences of elapsed_s.
[[nodiscard]] std::vector<double> iteration_times(const ConvergenceTrace& trace);

/// Builds a trace row for `iterate` against `reference` (the original data).
[[nodiscard]] TraceRow measure_iterate(std::size_t iteration, const DenseTensor& iterate,
                                       const DenseTensor& reference, double reference_frobenius,
                                       double reference_chebyshev, double elapsed_s);

/// Options shared by the iterative solvers.
struct SolverOptions {
    std::size_t iterations = 1;
    /// Stop once the low-rank iterate's negativity (Frobenius) drops below this.
    std::optional<double> stop_tolerance;
    /// Verify the discarded-energy error bound of every deterministic
    /// truncation sweep; a violation throws NumericalError.
    bool check_bounds = false;
};

/// Monotonic stopwatch accumulating only the intervals it is running.
class Stopwatch {
public:
    void start() { begin_ = Clock::now(); }
    void stop() { total_ += std::chrono::duration<double>(Clock::now() - begin_).count(); }
    [[nodiscard]] double seconds() const noexcept { return total_; }

private:
    using Clock = std::chrono::steady_clock;
    Clock::time_point begin_{};
    double total_ = 0.0;
};

}  // namespace nlrta
