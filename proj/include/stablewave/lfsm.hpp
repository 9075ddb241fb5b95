#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stablewave/rng.hpp"

namespace stablewave {

// Simulation parameters for linear fractional stable motion on [0,1].
// n_grid is the mesh count N (power of two); truncation M drops kernel
// history below s = -M.  alpha = 2 and H = 1/alpha are admitted as
// generator-only oracle regimes (fractional/ordinary Brownian motion).
struct SimConfig {
    double H = 0.8;
    double alpha = 1.5;
    std::int64_t n_grid = 1 << 14;
    int truncation = 8;
    std::uint64_t seed = 42;
    std::int64_t max_cells = std::int64_t{1} << 26;

    void validate() const;
    double kernel_exponent() const { return H - 1.0 / alpha; } // in [0,1)
};

struct SamplePath {
    std::vector<double> values; // X(k/N), k = 0..N
    SimConfig config;
    std::uint64_t stream_index = 0;

    std::int64_t n_grid() const { return config.n_grid; }
    double t(std::int64_t k) const { return static_cast<double>(k) / static_cast<double>(config.n_grid); }
};

// Moving-average weights a_i = (i/N)^(H-1/alpha), i = 1..N(M+1): the
// t-section of the kernel sampled at lattice points.  The path is the
// convolution of these weights with the innovations, re-centered at t = 0,
// which reproduces the two-term kernel of the defining integral cell by
// cell (distant history enters only through near-cancelling differences).
std::vector<double> ma_weights(const SimConfig& config);

// Innovation cells m = -N*M .. N are drawn in index order from
// RngStream(config.seed, stream_index) with scale N^(-1/alpha); the path is
// one FFT circular convolution plus the t = 0 recentering, so X(0) = 0
// exactly and identical configs give bit-identical paths.
SamplePath simulate_path(const SimConfig& config, std::uint64_t stream_index = 0);

// Same path construction from caller-supplied innovations (cells
// m = -N*M .. N-1).  Used for common-random-number mesh refinement checks.
SamplePath simulate_path_from_innovations(const SimConfig& config, std::span<const double> innovations);

struct LagRatio {
    double h1 = 0;
    double h2 = 0;
    double ratio_hat = 0;    // fitted scale ratio s(h1)/s(h2)
    double ratio_theory = 0; // (h1/h2)^H
};

// Pooled-median increment scale ratios against the self-similar prediction.
// Lags must be integer multiples of the mesh.
std::vector<LagRatio> increment_scaling_check(std::span<const SamplePath> paths,
                                              std::span<const std::pair<double, double>> lag_pairs);

// Slope of log s(h) vs log h across dyadic lags h = 2^-m; estimates H.
double increment_scale_slope(std::span<const SamplePath> paths, std::span<const int> lag_exponents);

} // namespace stablewave
