// SPDX-License-Identifier: MIT
#include "nlrta/trace.hpp"

#include "nlrta/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace nlrta {

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real(const std::string& field) {
    double v = 0.0;
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw Error("trace CSV: malformed number '" + field + "'");
    }
    return v;
}

}  // namespace

void ConvergenceTrace::write_csv(std::ostream& out, bool include_timing) const {
    out << kCsvHeader << '\n';
    for (const TraceRow& row : rows) {
        out << row.iteration << ',' << format_real(row.negativity.frobenius) << ','
            << format_real(row.negativity.chebyshev) << ',' << format_real(row.negativity.fraction) << ','
            << format_real(row.rel_err_frobenius) << ',' << format_real(row.rel_err_chebyshev) << ','
            << format_real(include_timing ? row.elapsed_s : 0.0) << '\n';
    }
}

ConvergenceTrace ConvergenceTrace::read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw Error("trace CSV: unexpected header");
    ConvergenceTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 7) throw Error("trace CSV: expected 7 fields, got " + std::to_string(fields.size()));
        TraceRow row;
        const char* end = fields[0].data() + fields[0].size();
        const auto [ptr, ec] = std::from_chars(fields[0].data(), end, row.iteration);
        if (ec != std::errc() || ptr != end) throw Error("trace CSV: malformed iteration '" + fields[0] + "'");
        row.negativity.frobenius = parse_real(fields[1]);
        row.negativity.chebyshev = parse_real(fields[2]);
        row.negativity.fraction = parse_real(fields[3]);
        row.rel_err_frobenius = parse_real(fields[4]);
        row.rel_err_chebyshev = parse_real(fields[5]);
        row.elapsed_s = parse_real(fields[6]);
        trace.rows.push_back(row);
    }
    return trace;
}

std::vector<double> iteration_times(const ConvergenceTrace& trace) {
    std::vector<double> out;
    out.reserve(trace.rows.size());
    double prev = 0.0;
    for (const TraceRow& row : trace.rows) {
        out.push_back(row.elapsed_s - prev);
        prev = row.elapsed_s;
    }
    return out;
}

TraceRow measure_iterate(std::size_t iteration, const DenseTensor& iterate, const DenseTensor& reference,
                         double reference_frobenius, double reference_chebyshev, double elapsed_s) {
    TraceRow row;
    row.iteration = iteration;
    row.negativity = negativity_stats(iterate);
    row.rel_err_frobenius = frobenius_distance(reference, iterate) / reference_frobenius;
    row.rel_err_chebyshev = chebyshev_distance(reference, iterate) / reference_chebyshev;
    row.elapsed_s = elapsed_s;
    return row;
}

}  // namespace nlrta
