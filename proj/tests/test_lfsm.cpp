#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "stablewave/errors.hpp"
#include "stablewave/kernel.hpp"
#include "stablewave/lfsm.hpp"
#include "stablewave/parallel.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/stable.hpp"
#include "stablewave/stats.hpp"

using namespace stablewave;

TEST_CASE("ma_weights match the kernel section on the lattice") {
    SimConfig c;
    c.H = 0.9;
    c.alpha = 1.25; // kernel exponent 0.1
    c.n_grid = 1 << 10;
    const auto w = ma_weights(c);
    CHECK(w.size() == static_cast<std::size_t>(c.n_grid * (c.truncation + 1)));
    // a_1 = (1/N)^(H - 1/alpha), exponent 0.1 up to the binary rounding of H
    CHECK(w[0] == std::pow(1.0 / 1024.0, c.kernel_exponent()));
    CHECK(w[0] == doctest::Approx(std::pow(1.0 / 1024.0, 0.1)).epsilon(1e-14));
    // history differences positive and decreasing (concavity of u^0.1)
    double prev_diff = w[0];
    for (std::size_t i = 1; i < 4096; ++i) {
        const double diff = w[i] - w[i - 1];
        CHECK(diff > 0.0);
        CHECK(diff < prev_diff);
        prev_diff = diff;
    }
}

TEST_CASE("ma_weights agree across mesh refinement on shared abscissae") {
    SimConfig coarse, fine;
    coarse.n_grid = 1 << 8;
    fine.n_grid = 1 << 9;
    const auto wc = ma_weights(coarse);
    const auto wf = ma_weights(fine);
    for (std::size_t i = 1; i <= wc.size(); ++i) CHECK(wc[i - 1] == wf[2 * i - 1]); // bitwise
}

TEST_CASE("combined cell weights carry the alpha-mass of the kernel section") {
    SimConfig c; // H=0.8 alpha=1.5 defaults
    c.n_grid = 1 << 10;
    const auto a = ma_weights(c);
    const std::int64_t n = c.n_grid;
    auto ak = [&](std::int64_t i) { return i >= 1 ? a[static_cast<std::size_t>(i - 1)] : 0.0; };
    double mass = 0.0;
    for (std::int64_t cell = -n * c.truncation; cell < n; ++cell)
        mass += std::pow(std::fabs(ak(n - cell) - ak(-cell)), c.alpha);
    mass /= static_cast<double>(n);

    const double kap = c.kernel_exponent();
    auto f1 = [&](double s) { return pospow(1.0 - s, kap) - pospow(-s, kap); };
    const double oracle = std::pow(integral_scale(f1, -8.0, 1.0, c.alpha, 1 << 20), c.alpha);
    CHECK(std::fabs(mass / oracle - 1.0) < 1e-3);
}

TEST_CASE("simulate_path pins X(0) = 0 and is bit-reproducible") {
    for (auto [h, al] : {std::pair{0.8, 1.5}, {0.7, 1.8}, {0.9, 1.25}}) {
        SimConfig c;
        c.H = h;
        c.alpha = al;
        c.n_grid = 1 << 10;
        const auto p = simulate_path(c, 3);
        CHECK(p.values[0] == 0.0);
        CHECK(p.values.size() == static_cast<std::size_t>(c.n_grid) + 1);
        const auto q = simulate_path(c, 3);
        CHECK(p.values == q.values);
        const auto r = simulate_path(c, 4);
        CHECK(p.values != r.values);
    }
}

TEST_CASE("resource cap and parameter domains are enforced") {
    SimConfig c;
    c.max_cells = 1000; // N(M+1) = 9216 exceeds it
    c.n_grid = 1 << 10;
    CHECK_THROWS_AS(simulate_path(c), NumericError);
    SimConfig bad;
    bad.alpha = 2.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = SimConfig{};
    bad.H = 0.5; // below 1/alpha = 2/3
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = SimConfig{};
    bad.n_grid = 1000; // not a power of two
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = SimConfig{};
    bad.truncation = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("marginal law of X(1): scale oracle, self-similarity, stationarity") {
    SimConfig c; // H=0.8, alpha=1.5
    c.n_grid = 1 << 14;
    const int reps = 2000;
    std::vector<double> x_one(reps), x_half(reps), inc_a(reps), inc_b(reps);
    parallel_for(reps, 2, [&](long r) {
        const auto p = simulate_path(c, static_cast<std::uint64_t>(r));
        const std::int64_t n = c.n_grid;
        x_one[r] = p.values[static_cast<std::size_t>(n)];
        x_half[r] = p.values[static_cast<std::size_t>(n / 2)];
        // increments at lag 2^-4 from two shifted windows
        const std::int64_t lag = n >> 4;
        const std::int64_t t1 = n / 4, t2 = (5 * n) / 8;
        inc_a[r] = p.values[static_cast<std::size_t>(t1 + lag)] - p.values[static_cast<std::size_t>(t1)];
        inc_b[r] = p.values[static_cast<std::size_t>(t2 + lag)] - p.values[static_cast<std::size_t>(t2)];
    });

    // scale of X(1) against the quadrature oracle for the t = 1 kernel section
    const double kap = c.kernel_exponent();
    auto f1 = [&](double s) { return pospow(1.0 - s, kap) - pospow(-s, kap); };
    const double oracle = integral_scale(f1, -8.0, 1.0, c.alpha, 1 << 20);
    std::vector<double> mags(reps);
    for (int i = 0; i < reps; ++i) mags[i] = std::fabs(x_one[i]);
    const double emp = median(std::move(mags)) / sas_unit_median(c.alpha);
    CHECK(std::fabs(emp / oracle - 1.0) < 0.05);

    // self-similarity: X(1/2) / 2^-H  against X(1), disjoint replicate halves
    std::vector<double> sample_a, sample_b;
    for (int i = 0; i < reps / 2; ++i) sample_a.push_back(x_half[i] * std::pow(0.5, -c.H));
    for (int i = reps / 2; i < reps; ++i) sample_b.push_back(x_one[i]);
    const double ks_ss = oracle::ks_statistic(sample_a, sample_b);
    CHECK(ks_ss < oracle::ks_critical(sample_a.size(), sample_b.size(), 1.628)); // 1% level

    // stationary increments: same lag, shifted windows, disjoint halves
    std::vector<double> ia(inc_a.begin(), inc_a.begin() + reps / 2);
    std::vector<double> ib(inc_b.begin() + reps / 2, inc_b.end());
    const double ks_st = oracle::ks_statistic(ia, ib);
    CHECK(ks_st < oracle::ks_critical(ia.size(), ib.size(), 1.628));
}

TEST_CASE("increment scaling follows h^H") {
    SUBCASE("identical lags give ratio one") {
        SimConfig c;
        c.n_grid = 1 << 10;
        std::vector<SamplePath> paths{simulate_path(c, 0)};
        std::vector<std::pair<double, double>> lags{{1.0 / 16, 1.0 / 16}};
        const auto rep = increment_scaling_check(paths, lags);
        CHECK(rep[0].ratio_hat == 1.0);
        CHECK(rep[0].ratio_theory == 1.0);
    }

    SUBCASE("Gaussian oracle regime alpha = 2, H = 0.7") {
        SimConfig c;
        c.H = 0.7;
        c.alpha = 2.0;
        c.n_grid = 1 << 12;
        std::vector<SamplePath> paths(64);
        parallel_for(64, 2, [&](long r) { paths[r] = simulate_path(c, static_cast<std::uint64_t>(r)); });
        std::vector<std::pair<double, double>> lags{{1.0 / 16, 1.0 / 64}};
        const auto rep = increment_scaling_check(paths, lags);
        CHECK(rep[0].ratio_theory == doctest::Approx(std::exp2(1.4)).epsilon(1e-12));
        CHECK(std::fabs(rep[0].ratio_hat / rep[0].ratio_theory - 1.0) < 0.03);
    }

    SUBCASE("log-scale slope estimates H for the stable case") {
        SimConfig c; // H = 0.8, alpha = 1.5
        c.n_grid = 1 << 12;
        std::vector<SamplePath> paths(200);
        parallel_for(200, 2, [&](long r) { paths[r] = simulate_path(c, static_cast<std::uint64_t>(r)); });
        const std::vector<int> lags{2, 3, 4, 5, 6};
        CHECK(std::fabs(increment_scale_slope(paths, lags) - 0.8) < 0.05);
    }

    SUBCASE("misaligned lag is rejected") {
        SimConfig c;
        c.n_grid = 1 << 8;
        std::vector<SamplePath> paths{simulate_path(c, 0)};
        std::vector<std::pair<double, double>> lags{{1.0 / 3.0, 1.0 / 4.0}};
        CHECK_THROWS_AS(increment_scaling_check(paths, lags), ConfigError);
    }
}

TEST_CASE("mesh refinement with common random numbers converges") {
    SimConfig base; // H=0.8 alpha=1.5 M=8
    const int n_seeds = 20;
    std::vector<double> d_coarse(n_seeds), d_fine(n_seeds);
    parallel_for(n_seeds, 2, [&](long seed) {
        SimConfig c12 = base;
        c12.n_grid = 1 << 12;
        c12.seed = 1000 + static_cast<std::uint64_t>(seed);
        const std::int64_t cells12 = c12.n_grid * (c12.truncation + 1);
        RngStream rng(c12.seed, 0);
        const StableLaw law(c12.alpha, std::pow(static_cast<double>(c12.n_grid), -1.0 / c12.alpha));
        std::vector<double> xi12(static_cast<std::size_t>(cells12));
        sas_fill(law, rng, xi12);

        // coarse innovations are pairwise sums: SaS(s) + SaS(s) has scale
        // 2^(1/alpha) s, exactly the coarser cell measure
        auto coarsen = [&](const std::vector<double>& fine) {
            std::vector<double> out(fine.size() / 2);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = fine[2 * i] + fine[2 * i + 1];
            return out;
        };
        const auto xi11 = coarsen(xi12);
        const auto xi10 = coarsen(xi11);

        SimConfig c11 = c12, c10 = c12;
        c11.n_grid = 1 << 11;
        c10.n_grid = 1 << 10;
        const auto p12 = simulate_path_from_innovations(c12, xi12);
        const auto p11 = simulate_path_from_innovations(c11, xi11);
        const auto p10 = simulate_path_from_innovations(c10, xi10);

        auto supdiff = [](const SamplePath& coarse, const SamplePath& fine) {
            double d = 0;
            for (std::int64_t k = 0; k <= coarse.n_grid(); ++k)
                d = std::max(d, std::fabs(coarse.values[static_cast<std::size_t>(k)] -
                                          fine.values[static_cast<std::size_t>(2 * k)]));
            return d;
        };
        d_coarse[seed] = supdiff(p10, p11);
        d_fine[seed] = supdiff(p11, p12);
    });
    CHECK(median(d_fine) < median(d_coarse));
}
