#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "stablewave/errors.hpp"

namespace stablewave {

// Positive part raised to a power: (z)_+^k, with (0)_+^0 = 0 so that the
// k = 0 case degenerates to the indicator of z > 0.
inline double pospow(double z, double k) {
    return z > 0.0 ? std::pow(z, k) : 0.0;
}

// Composite trapezoid on a uniform mesh with Kahan-compensated accumulation.
// The compensation matters: several integrands here are evaluated at ~1e7
// nodes where the result is a small residue of cancelling terms.
template <class F>
double trapezoid(F&& f, double a, double b, std::int64_t panels) {
    if (panels < 1) throw ConfigError("trapezoid: panels must be >= 1");
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.5 * (f(a) + f(b));
    double comp = 0.0;
    for (std::int64_t i = 1; i < panels; ++i) {
        const double y = f(a + static_cast<double>(i) * h) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum * h;
}

// Cumulative trapezoid over equally spaced samples; out[0] = 0.
inline std::vector<double> cumtrapz(std::span<const double> samples, double step) {
    std::vector<double> out(samples.size(), 0.0);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double y = 0.5 * step * (samples[i - 1] + samples[i]) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        out[i] = sum;
    }
    return out;
}

// Scale parameter of the stable integral of f over [lo, hi]:
// (∫ |f|^alpha)^(1/alpha), composite trapezoid at the given resolution.
template <class F>
double integral_scale(F&& f, double lo, double hi, double alpha, std::int64_t panels) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
        throw ConfigError("integral_scale: support must be a finite interval");
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ConfigError("integral_scale: alpha out of (0,2]");
    auto g = [&](double s) {
        const double v = f(s);
        if (!std::isfinite(v)) throw NumericError("integral_scale: non-finite integrand value");
        return std::pow(std::fabs(v), alpha);
    };
    return std::pow(trapezoid(g, lo, hi, panels), 1.0 / alpha);
}

} // namespace stablewave
