#include "stablewave/stable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stablewave/errors.hpp"

namespace stablewave {

StableLaw::StableLaw(double alpha_, double scale_) : alpha(alpha_), scale(scale_) {
    if (!(alpha > 0.0 && alpha <= 2.0) || !std::isfinite(alpha))
        throw ConfigError("StableLaw: alpha must lie in (0,2]");
    if (!(scale >= 0.0) || !std::isfinite(scale))
        throw ConfigError("StableLaw: scale must be non-negative");
}

double sas_sample(const StableLaw& law, RngStream& rng) {
    if (law.scale <= 0.0) throw ConfigError("sas_sample: scale must be positive");
    const double u = std::numbers::pi * (rng.uniform01() - 0.5); // (-pi/2, pi/2)
    const double w = -std::log(rng.uniform01());                 // Exp(1), strictly positive
    const double a = law.alpha;
    const double x = std::sin(a * u) / std::pow(std::cos(u), 1.0 / a) *
                     std::pow(std::cos((1.0 - a) * u) / w, (1.0 - a) / a);
    return law.scale * x;
}

void sas_fill(const StableLaw& law, RngStream& rng, std::span<double> out) {
    for (auto& v : out) v = sas_sample(law, rng);
}

LineFit tail_fit_from_probs(std::span<const double> t_grid, std::span<const double> probs) {
    if (t_grid.size() != probs.size()) throw ConfigError("tail fit: grid/prob size mismatch");
    std::vector<double> lx, ly;
    lx.reserve(t_grid.size());
    ly.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0)) throw ConfigError("tail fit: grid must be positive");
        if (probs[i] <= 0.0) continue; // empty tail at this threshold
        lx.push_back(std::log(t_grid[i]));
        ly.push_back(std::log(probs[i]));
    }
    if (lx.size() < 2) throw NumericError("tail fit: insufficient non-empty tail counts");
    return fit_line(lx, ly);
}

std::vector<double> empirical_tail(std::span<const double> samples, std::span<const double> t_grid) {
    std::vector<double> mags(samples.size());
    std::transform(samples.begin(), samples.end(), mags.begin(),
                   [](double v) { return std::fabs(v); });
    std::sort(mags.begin(), mags.end());
    std::vector<double> probs(t_grid.size());
    const double n = static_cast<double>(mags.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const auto it = std::upper_bound(mags.begin(), mags.end(), t_grid[i]);
        probs[i] = static_cast<double>(mags.end() - it) / n;
    }
    return probs;
}

LineFit tail_index_fit(std::span<const double> samples, std::span<const double> t_grid) {
    if (samples.empty()) throw ConfigError("tail_index_fit: empty sample");
    const auto probs = empirical_tail(samples, t_grid);
    return tail_fit_from_probs(t_grid, probs);
}

} // namespace stablewave
