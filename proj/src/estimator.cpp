#include "stablewave/estimator.hpp"

#include <cmath>

#include "stablewave/errors.hpp"
#include "stablewave/stats.hpp"

namespace stablewave {

double max_abs(const WaveletPyramid& pyramid, int j) {
    const auto& lvl = pyramid.level(j);
    double m = 0.0;
    for (double d : lvl) m = std::max(m, std::fabs(d));
    return m;
}

namespace {

// Raw estimator arithmetic without throwing on a bad denominator.
std::pair<double, bool> alpha_hat_raw(double D_j, int j, double H) {
    const double denom = H + std::log(D_j) / (static_cast<double>(j) * std::log(2.0));
    return {1.0 / denom, denom > 0.0};
}

} // namespace

double alpha_hat(double D_j, int j, double H) {
    if (!(D_j > 0.0)) throw NumericError("alpha_hat: D_j must be positive");
    if (j < 1) throw ConfigError("alpha_hat: j must be >= 1");
    if (!(H > 0.0 && H < 1.0)) throw ConfigError("alpha_hat: H out of (0,1)");
    auto [value, ok] = alpha_hat_raw(D_j, j, H);
    if (!ok) throw SignError("alpha_hat: H + log2(D_j)/j is not positive");
    return value;
}

EstimateTrace estimate_trace(const WaveletPyramid& pyramid, double H) {
    if (!(H > 0.0 && H < 1.0)) throw ConfigError("estimate_trace: H out of (0,1)");
    EstimateTrace trace;
    trace.H_used = H;
    trace.wavelet = pyramid.wavelet;
    trace.provenance = pyramid.source;
    for (int j = pyramid.j_min; j <= pyramid.j_max; ++j) {
        TraceRow row;
        row.j = j;
        row.D_j = max_abs(pyramid, j);
        if (!(row.D_j > 0.0)) throw NumericError("estimate_trace: D_j = 0 at level " + std::to_string(j));
        if (j == 0) {
            row.flagged = true; // log(D_0)/0 undefined; retain D_0 only
            row.alpha_hat = 0.0;
        } else {
            auto [value, ok] = alpha_hat_raw(row.D_j, j, H);
            row.alpha_hat = value;
            row.flagged = !ok;
        }
        trace.rows.push_back(row);
    }
    return trace;
}

double holder_diagnostic(const SamplePath& path, std::span<const int> dyadic_lags) {
    if (dyadic_lags.size() < 2) throw ConfigError("holder_diagnostic: need >= 2 lags");
    const std::int64_t n = path.n_grid();
    std::vector<double> xs, ys;
    for (int m : dyadic_lags) {
        const std::int64_t steps = n >> m;
        if (m < 1 || steps < 1) throw ConfigError("holder_diagnostic: lag 2^-" + std::to_string(m) +
                                                  " does not divide the mesh");
        double sup = 0.0;
        for (std::int64_t k = 0; k + steps <= n; ++k)
            sup = std::max(sup, std::fabs(path.values[static_cast<std::size_t>(k + steps)] -
                                          path.values[static_cast<std::size_t>(k)]));
        if (!(sup > 0.0)) throw NumericError("holder_diagnostic: degenerate (constant) path");
        xs.push_back(-static_cast<double>(m));
        ys.push_back(std::log2(sup));
    }
    return fit_line(xs, ys).slope;
}

} // namespace stablewave
