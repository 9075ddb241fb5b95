#include "stablewave/lfsm.hpp"

#include <algorithm>
#include <cmath>

#include "stablewave/errors.hpp"
#include "stablewave/fft.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/stable.hpp"
#include "stablewave/stats.hpp"

namespace stablewave {

void SimConfig::validate() const {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw ConfigError("SimConfig: alpha must lie in (1,2] (2 is the Gaussian oracle regime)");
    if (!(H >= 1.0 / alpha && H < 1.0))
        throw ConfigError("SimConfig: H must lie in [1/alpha, 1)");
    if (n_grid < 2 || (n_grid & (n_grid - 1)) != 0)
        throw ConfigError("SimConfig: n_grid must be a power of two >= 2");
    if (truncation < 1) throw ConfigError("SimConfig: truncation must be >= 1");
    if (n_grid * (truncation + 1) > max_cells)
        throw NumericError("SimConfig: N(M+1) exceeds the configured cell cap");
}

std::vector<double> ma_weights(const SimConfig& config) {
    config.validate();
    const double kappa = config.kernel_exponent();
    const double n = static_cast<double>(config.n_grid);
    const std::int64_t len = config.n_grid * (config.truncation + 1);
    std::vector<double> w(len);
    for (std::int64_t i = 1; i <= len; ++i)
        w[i - 1] = pospow(static_cast<double>(i) / n, kappa);
    return w;
}

SamplePath simulate_path_from_innovations(const SimConfig& config, std::span<const double> innovations) {
    config.validate();
    const std::int64_t n = config.n_grid;
    const std::int64_t len = n * (config.truncation + 1);
    if (static_cast<std::int64_t>(innovations.size()) != len)
        throw ConfigError("simulate_path: innovation count must be N(M+1)");

    const auto weights = ma_weights(config);
    const std::size_t fft_len = next_pow2(static_cast<std::size_t>(2 * len));
    RealConvolver conv(fft_len);
    conv.set_kernel(weights);

    std::vector<double> full(static_cast<std::size_t>(len));
    conv.apply(innovations, full);
    // V_k = full[k + N*M - 1]; the path is V_k - V_0, so X(0) = 0 exactly.
    const std::int64_t off = n * config.truncation - 1;
    SamplePath path;
    path.config = config;
    path.values.resize(static_cast<std::size_t>(n + 1));
    const double v0 = full[static_cast<std::size_t>(off)];
    path.values[0] = 0.0;
    for (std::int64_t k = 1; k <= n; ++k)
        path.values[static_cast<std::size_t>(k)] = full[static_cast<std::size_t>(off + k)] - v0;
    return path;
}

SamplePath simulate_path(const SimConfig& config, std::uint64_t stream_index) {
    config.validate();
    const std::int64_t n = config.n_grid;
    const std::int64_t len = n * (config.truncation + 1);
    RngStream rng(config.seed, stream_index);
    const StableLaw innovation_law(config.alpha,
                                   std::pow(static_cast<double>(n), -1.0 / config.alpha));
    // Cells m = -N*M .. N in index order; the convolution consumes m <= N-1.
    std::vector<double> xi(static_cast<std::size_t>(len));
    sas_fill(innovation_law, rng, xi);
    (void)sas_sample(innovation_law, rng); // m = N, reserved by the seeding contract
    auto path = simulate_path_from_innovations(config, xi);
    path.stream_index = stream_index;
    return path;
}

namespace {

std::int64_t lag_to_steps(double h, std::int64_t n) {
    const double raw = h * static_cast<double>(n);
    const double rounded = std::round(raw);
    if (std::fabs(raw - rounded) > 1e-9 * std::max(1.0, raw) || rounded < 1.0)
        throw ConfigError("increment lag is not a positive multiple of the mesh");
    return static_cast<std::int64_t>(rounded);
}

double pooled_increment_scale(std::span<const SamplePath> paths, std::int64_t steps) {
    std::vector<double> mags;
    for (const auto& p : paths) {
        const std::int64_t n = p.n_grid();
        if (steps > n) throw ConfigError("increment lag exceeds the path length");
        for (std::int64_t k = 0; k + steps <= n; ++k)
            mags.push_back(std::fabs(p.values[static_cast<std::size_t>(k + steps)] -
                                     p.values[static_cast<std::size_t>(k)]));
    }
    return median(std::move(mags));
}

} // namespace

std::vector<LagRatio> increment_scaling_check(std::span<const SamplePath> paths,
                                              std::span<const std::pair<double, double>> lag_pairs) {
    if (paths.empty()) throw ConfigError("increment_scaling_check: no paths");
    const auto& cfg = paths.front().config;
    for (const auto& p : paths)
        if (p.config.n_grid != cfg.n_grid || p.config.H != cfg.H || p.config.alpha != cfg.alpha)
            throw ConfigError("increment_scaling_check: paths must share a config");

    std::vector<LagRatio> out;
    out.reserve(lag_pairs.size());
    for (const auto& [h1, h2] : lag_pairs) {
        LagRatio r;
        r.h1 = h1;
        r.h2 = h2;
        r.ratio_theory = std::pow(h1 / h2, cfg.H);
        if (h1 == h2) {
            r.ratio_hat = 1.0; // same lag, identical pooled scale by construction
        } else {
            r.ratio_hat = pooled_increment_scale(paths, lag_to_steps(h1, cfg.n_grid)) /
                          pooled_increment_scale(paths, lag_to_steps(h2, cfg.n_grid));
        }
        out.push_back(r);
    }
    return out;
}

double increment_scale_slope(std::span<const SamplePath> paths, std::span<const int> lag_exponents) {
    if (paths.empty() || lag_exponents.size() < 2)
        throw ConfigError("increment_scale_slope: need paths and >= 2 lags");
    const std::int64_t n = paths.front().n_grid();
    std::vector<double> lx, ly;
    for (int m : lag_exponents) {
        const std::int64_t steps = n >> m;
        if (steps < 1 || (std::int64_t{1} << m) > n)
            throw ConfigError("increment_scale_slope: lag 2^-" + std::to_string(m) + " below the mesh");
        lx.push_back(-static_cast<double>(m) * std::log(2.0));
        ly.push_back(std::log(pooled_increment_scale(paths, steps)));
    }
    return fit_line(lx, ly).slope;
}

} // namespace stablewave
