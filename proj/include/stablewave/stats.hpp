#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "stablewave/errors.hpp"

namespace stablewave {

struct LineFit {
    double slope = 0;
    double intercept = 0;
};

// Ordinary least squares y = slope*x + intercept.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw NumericError("fit_line: need at least two matched points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw NumericError("fit_line: degenerate abscissae");
    return {sxy / sxx, my - mx * (sxy / sxx)};
}

// Type-7 quantile (linear interpolation between order statistics) on a
// sorted range.  Deterministic, so reports are byte-stable.
inline double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw NumericError("quantile: empty sample");
    if (sorted.size() == 1) return sorted[0];
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double w = h - static_cast<double>(lo);
    return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

inline double quantile(std::vector<double> sample, double p) {
    std::sort(sample.begin(), sample.end());
    return quantile_sorted(sample, p);
}

inline double median(std::vector<double> sample) { return quantile(std::move(sample), 0.5); }

inline double iqr(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    return quantile_sorted(sample, 0.75) - quantile_sorted(sample, 0.25);
}

} // namespace stablewave
