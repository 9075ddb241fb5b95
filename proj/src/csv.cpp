#include "stablewave/csv.hpp"

#include <charconv>

#include "stablewave/errors.hpp"

namespace stablewave {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc{}) throw NumericError("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

void write_path_csv(std::ostream& os, const SamplePath& path) {
    os << "t,x\n";
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(path.values.size()); ++k)
        os << format_double(path.t(k)) << ',' << format_double(path.values[static_cast<std::size_t>(k)])
           << '\n';
}

void write_pyramid_csv(std::ostream& os, const WaveletPyramid& pyramid) {
    os << "j,k,d\n";
    for (int j = pyramid.j_min; j <= pyramid.j_max; ++j) {
        const auto& lvl = pyramid.level(j);
        for (std::size_t k = 0; k < lvl.size(); ++k)
            os << j << ',' << k << ',' << format_double(lvl[k]) << '\n';
    }
}

void write_trace_csv(std::ostream& os, const EstimateTrace& trace) {
    os << "j,D_j,alpha_hat,flag\n";
    for (const auto& row : trace.rows)
        os << row.j << ',' << format_double(row.D_j) << ',' << format_double(row.alpha_hat) << ','
           << (row.flagged ? 1 : 0) << '\n';
}

void write_theory_csv(std::ostream& os, std::span<const TheoryRow> rows) {
    os << "quantity,j,delta,value,bound\n";
    for (const auto& r : rows) {
        os << r.quantity << ',' << r.j << ',' << format_double(r.delta) << ','
           << format_double(r.value) << ',';
        if (r.has_bound) os << format_double(r.bound);
        os << '\n';
    }
}

void write_mc_csv(std::ostream& os, std::span<const McRow> rows,
                  std::span<const std::string> provenance) {
    for (const auto& line : provenance) os << "# " << line << '\n';
    os << "j,alpha_hat_median,alpha_hat_iqr,n_flagged\n";
    for (const auto& r : rows)
        os << r.j << ',' << format_double(r.alpha_hat_median) << ','
           << format_double(r.alpha_hat_iqr) << ',' << r.n_flagged << '\n';
}

} // namespace stablewave
