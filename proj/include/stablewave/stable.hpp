#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stablewave/rng.hpp"
#include "stablewave/stats.hpp"

namespace stablewave {

// Symmetric alpha-stable law.  alpha in (0,2]; the inference pipeline uses
// alpha in (1,2), while alpha = 1 (Cauchy) and alpha = 2 (Gaussian with
// variance 2*scale^2) are kept as closed-form test oracles.
struct StableLaw {
    double alpha;
    double scale;

    StableLaw(double alpha_, double scale_);
};

// One draw via the Chambers-Mallows-Stuck transform of a uniform angle and
// a unit exponential.  The symmetric form has no singular parameter cases:
// at alpha = 1 it reduces to scale * tan(u), at alpha = 2 to 2*sin(u)*sqrt(w).
double sas_sample(const StableLaw& law, RngStream& rng);

void sas_fill(const StableLaw& law, RngStream& rng, std::span<double> out);

// Least-squares fit of log p against log t; exact for exact power laws.
LineFit tail_fit_from_probs(std::span<const double> t_grid, std::span<const double> probs);

// Empirical tail P(|Y| > t) on t_grid, then log-log fit.  For SaS samples the
// slope estimates -alpha.  Grid points with empty tails are dropped; if all
// are empty a NumericError is raised.
LineFit tail_index_fit(std::span<const double> samples, std::span<const double> t_grid);

// Empirical tail probabilities, one per grid point (no dropping).
std::vector<double> empirical_tail(std::span<const double> samples, std::span<const double> t_grid);

} // namespace stablewave
