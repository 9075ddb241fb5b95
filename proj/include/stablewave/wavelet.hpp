#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stablewave/lfsm.hpp"

namespace stablewave {

// Analyzing function: continuous, supported in [0,1], with two vanishing
// moments.  Construction through `checked` enforces admissibility
// (|moment_0|, |moment_1| <= 1e-8 at resolution 2^16, endpoint zeros, and
// a non-vanishing L2 norm); `unchecked` exists for diagnostics that need to
// exercise inadmissible functions.
class WaveletSpec {
public:
    static WaveletSpec checked(std::function<double(double)> eval, std::string name,
                               double moment_tolerance = 1e-8);
    static WaveletSpec unchecked(std::function<double(double)> eval, std::string name,
                                 double moment_tolerance = 1e-8);

    // Zero outside [0,1].
    double operator()(double t) const {
        return (t < 0.0 || t > 1.0) ? 0.0 : eval_(t);
    }

    const std::string& name() const { return name_; }
    double moment_tolerance() const { return tol_; }

private:
    WaveletSpec(std::function<double(double)> eval, std::string name, double tol)
        : eval_(std::move(eval)), name_(std::move(name)), tol_(tol) {}

    std::function<double(double)> eval_;
    std::string name_;
    double tol_;
};

// "trig2":     sin(2*pi*t) - 2*sin(4*pi*t)
// "poly-bump": t(1-t)(t^2 + q1 t + q0), q1/q0 solved so both moments vanish
WaveletSpec builtin_wavelet(std::string_view name);

// Numeric ∫ t^order ψ(t) dt over [0,1], composite trapezoid.
double moment_check(const WaveletSpec& psi, int order, std::int64_t resolution);

// Sampled antiderivatives psi^(-1), psi^(-2) on [0,1] via cumulative
// trapezoid.  Both are compactly supported in [0,1] exactly when the two
// moments vanish, so |end_value| doubles as an admissibility report.
struct Antiderivative {
    int order = 1;
    double step = 0;
    std::vector<double> values; // at k*step, k = 0..resolution
    double end_value = 0;       // value at 1

    double at(double z) const; // linear interpolation, 0 outside [0,1]
    bool support_ok(double tolerance) const;
};

Antiderivative antiderivative(const WaveletSpec& psi, int order, std::int64_t resolution);

// Coefficients d_{j,k}, 0 <= k < 2^j, for j in [j_min, j_max].
struct WaveletPyramid {
    int j_min = 0;
    int j_max = -1;
    std::vector<std::vector<double>> levels; // levels[j - j_min]
    std::string wavelet;
    std::string source;

    const std::vector<double>& level(int j) const;
    bool has_level(int j) const { return j >= j_min && j <= j_max; }
};

// Centered coefficient transform of a sampled path:
//   d_{j,k} = 2^j ∫ (X(t) - X(k 2^-j)) ψ(2^j t - k) dt
// by trapezoid over the path samples inside [k 2^-j, (k+1) 2^-j].  Centering
// keeps the quadrature error at the scale of the path's local oscillation.
// Requires n_grid == 2^(j_max + oversample) with oversample >= 3.
WaveletPyramid analyze(const SamplePath& path, const WaveletSpec& psi, int j_min, int j_max,
                       int oversample = 4);

} // namespace stablewave
