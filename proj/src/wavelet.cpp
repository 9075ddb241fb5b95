#include "stablewave/wavelet.hpp"

#include <cmath>
#include <numbers>

#include "stablewave/errors.hpp"
#include "stablewave/quadrature.hpp"

namespace stablewave {

namespace {

constexpr std::int64_t kGateResolution = std::int64_t{1} << 16;

double raw_moment(const std::function<double(double)>& eval, int order, std::int64_t resolution) {
    auto f = [&](double t) { return (order == 0 ? 1.0 : std::pow(t, order)) * eval(t); };
    return trapezoid(f, 0.0, 1.0, resolution);
}

} // namespace

WaveletSpec WaveletSpec::checked(std::function<double(double)> eval, std::string name, double tol) {
    if (std::fabs(eval(0.0)) > tol || std::fabs(eval(1.0)) > tol)
        throw ConfigError("WaveletSpec '" + name + "': psi must vanish at 0 and 1");
    for (int order : {0, 1}) {
        const double m = raw_moment(eval, order, kGateResolution);
        if (std::fabs(m) > tol)
            throw ConfigError("WaveletSpec '" + name + "': moment " + std::to_string(order) +
                              " = " + std::to_string(m) + " exceeds tolerance");
    }
    auto sq = [&](double t) { const double v = eval(t); return v * v; };
    if (!(trapezoid(sq, 0.0, 1.0, std::int64_t{1} << 12) > 0.0))
        throw ConfigError("WaveletSpec '" + name + "': psi is identically zero");
    return WaveletSpec(std::move(eval), std::move(name), tol);
}

WaveletSpec WaveletSpec::unchecked(std::function<double(double)> eval, std::string name, double tol) {
    return WaveletSpec(std::move(eval), std::move(name), tol);
}

WaveletSpec builtin_wavelet(std::string_view name) {
    using std::numbers::pi;
    if (name == "trig2") {
        auto f = [](double t) { return std::sin(2.0 * pi * t) - 2.0 * std::sin(4.0 * pi * t); };
        return WaveletSpec::checked(f, "trig2");
    }
    if (name == "poly-bump") {
        // t(1-t)(t^2 + q1 t + q0) with both moments zero.  Basis integrals
        // ∫ t^m t(1-t) dt = 1/((m+2)(m+3)); solve the resulting 2x2 system.
        auto b = [](int m) { return 1.0 / ((m + 2.0) * (m + 3.0)); };
        const double a11 = b(1), a12 = b(0), r1 = -b(2);
        const double a21 = b(2), a22 = b(1), r2 = -b(3);
        const double det = a11 * a22 - a12 * a21;
        const double q1 = (r1 * a22 - a12 * r2) / det;
        const double q0 = (a11 * r2 - r1 * a21) / det;
        auto f = [q1, q0](double t) { return t * (1.0 - t) * ((t + q1) * t + q0); };
        return WaveletSpec::checked(f, "poly-bump");
    }
    throw ConfigError("builtin_wavelet: unknown name '" + std::string(name) + "'");
}

double moment_check(const WaveletSpec& psi, int order, std::int64_t resolution) {
    if (order != 0 && order != 1) throw ConfigError("moment_check: order must be 0 or 1");
    if (resolution < (1 << 10)) throw ConfigError("moment_check: resolution must be >= 2^10");
    return raw_moment([&psi](double t) { return psi(t); }, order, resolution);
}

double Antiderivative::at(double z) const {
    if (z <= 0.0) return 0.0;
    if (z >= 1.0) return end_value;
    const double h = z / step;
    const auto lo = static_cast<std::size_t>(h);
    const double w = h - static_cast<double>(lo);
    return values[lo] * (1.0 - w) + values[lo + 1] * w;
}

bool Antiderivative::support_ok(double tolerance) const {
    return std::fabs(end_value) <= tolerance;
}

Antiderivative antiderivative(const WaveletSpec& psi, int order, std::int64_t resolution) {
    if (order != 1 && order != 2) throw ConfigError("antiderivative: order must be 1 or 2");
    if (resolution < 2) throw ConfigError("antiderivative: resolution too small");
    const double h = 1.0 / static_cast<double>(resolution);
    std::vector<double> samples(resolution + 1);
    for (std::int64_t i = 0; i <= resolution; ++i) samples[i] = psi(static_cast<double>(i) * h);
    auto prim = cumtrapz(samples, h);
    if (order == 2) prim = cumtrapz(prim, h);
    Antiderivative out;
    out.order = order;
    out.step = h;
    out.end_value = prim.back();
    out.values = std::move(prim);
    return out;
}

const std::vector<double>& WaveletPyramid::level(int j) const {
    if (!has_level(j)) throw ConfigError("WaveletPyramid: level " + std::to_string(j) + " missing");
    return levels[static_cast<std::size_t>(j - j_min)];
}

WaveletPyramid analyze(const SamplePath& path, const WaveletSpec& psi, int j_min, int j_max,
                       int oversample) {
    if (j_min < 0 || j_min > j_max) throw ConfigError("analyze: bad level range");
    if (oversample < 3) throw ConfigError("analyze: oversample must be >= 3");
    const std::int64_t n = path.n_grid();
    if (static_cast<std::int64_t>(path.values.size()) != n + 1)
        throw ConfigError("analyze: path length inconsistent with its mesh");
    const std::int64_t want = std::int64_t{1} << (j_max + oversample);
    if (n != want)
        throw ConfigError("analyze: path mesh must equal 2^(j_max + oversample); j_max too large for this grid");

    WaveletPyramid pyr;
    pyr.j_min = j_min;
    pyr.j_max = j_max;
    pyr.wavelet = psi.name();
    pyr.source = "n=" + std::to_string(n) + " seed=" + std::to_string(path.config.seed) +
                 " stream=" + std::to_string(path.stream_index);
    pyr.levels.resize(static_cast<std::size_t>(j_max - j_min + 1));

    for (int j = j_min; j <= j_max; ++j) {
        const std::int64_t windows = std::int64_t{1} << j;
        const std::int64_t w = n >> j; // path panels per coefficient window
        std::vector<double> psi_at(w + 1);
        for (std::int64_t i = 0; i <= w; ++i)
            psi_at[i] = psi(static_cast<double>(i) / static_cast<double>(w));
        auto& lvl = pyr.levels[static_cast<std::size_t>(j - j_min)];
        lvl.resize(windows);
        for (std::int64_t k = 0; k < windows; ++k) {
            const std::int64_t base = k * w;
            const double x0 = path.values[base];
            double sum = 0.0, comp = 0.0;
            for (std::int64_t i = 1; i < w; ++i) { // psi vanishes at both window ends
                const double y = (path.values[base + i] - x0) * psi_at[i] - comp;
                const double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            const double d = sum / static_cast<double>(w); // 2^j * h = 1/w
            if (!std::isfinite(d)) throw NumericError("analyze: non-finite coefficient");
            lvl[static_cast<std::size_t>(k)] = d;
        }
    }
    return pyr;
}

} // namespace stablewave
