#include "doctest.h"

#include <cmath>
#include <numbers>

#include "stablewave/errors.hpp"
#include "stablewave/quadrature.hpp"

using namespace stablewave;

TEST_CASE("trapezoid reproduces smooth integrals") {
    auto lin = [](double x) { return 3.0 * x + 1.0; };
    CHECK(trapezoid(lin, 0.0, 2.0, 16) == doctest::Approx(8.0).epsilon(1e-14)); // exact for affine
    auto sq = [](double x) { return x * x; };
    CHECK(trapezoid(sq, 0.0, 1.0, 1 << 12) == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
    auto s = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
    CHECK(std::fabs(trapezoid(s, 0.0, 1.0, 1 << 12)) < 1e-15); // full periods cancel exactly
}

TEST_CASE("cumtrapz integrates sampled data") {
    std::vector<double> samples;
    const int n = 1 << 10;
    const double h = 1.0 / n;
    for (int i = 0; i <= n; ++i) samples.push_back(2.0 * (i * h));
    const auto prim = cumtrapz(samples, h);
    CHECK(prim.front() == 0.0);
    CHECK(prim.back() == doctest::Approx(1.0).epsilon(1e-12));       // ∫ 2t = t^2
    CHECK(prim[n / 2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("integral_scale matches closed forms") {
    auto one = [](double) { return 1.0; };
    CHECK(integral_scale(one, 0.0, 1.0, 1.5, 1 << 10) == doctest::Approx(1.0).epsilon(1e-12));

    auto id = [](double s) { return s; };
    // ∫_0^1 s^1.5 ds = 1/2.5, scale = (1/2.5)^(1/1.5)
    const double expected = std::pow(0.4, 1.0 / 1.5);
    CHECK(expected == doctest::Approx(0.5428835233189813).epsilon(1e-12));
    CHECK(integral_scale(id, 0.0, 1.0, 1.5, 1 << 14) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("integral_scale is positively homogeneous") {
    auto f = [](double s) { return std::sin(3.0 * s) + 0.25; };
    for (double c : {2.0, -3.5, 0.125}) {
        auto cf = [&](double s) { return c * f(s); };
        const double lhs = integral_scale(cf, -1.0, 2.0, 1.4, 4096);
        const double rhs = std::fabs(c) * integral_scale(f, -1.0, 2.0, 1.4, 4096);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("integral_scale rejects bad inputs") {
    auto f = [](double) { return 1.0; };
    CHECK_THROWS_AS(integral_scale(f, 0.0, std::numeric_limits<double>::infinity(), 1.5, 64),
                    ConfigError);
    CHECK_THROWS_AS(integral_scale(f, 1.0, 0.0, 1.5, 64), ConfigError);
    auto bad = [](double s) { return 1.0 / (s - 0.5); }; // hits the pole at a node
    CHECK_THROWS_AS(integral_scale(bad, 0.0, 1.0, 1.5, 64), NumericError);
}

TEST_CASE("pospow implements the positive-part power") {
    CHECK(pospow(2.0, 0.5) == doctest::Approx(std::sqrt(2.0)));
    CHECK(pospow(0.0, 0.5) == 0.0);
    CHECK(pospow(-1.0, 0.5) == 0.0);
    CHECK(pospow(0.0, 0.0) == 0.0); // indicator convention at the origin
    CHECK(pospow(3.0, 0.0) == 1.0);
}
