#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "stablewave/lfsm.hpp"
#include "stablewave/wavelet.hpp"

namespace stablewave {

// Phi(x) = ∫_0^1 (y-x)_+^(H-1/alpha) ψ(y) dy, the reproducing kernel of the
// wavelet coefficients.  Trapezoid quadrature of the defining integral; for
// x in (0,1) the power-law kink at y = x sits on a mesh node and its pure
// power part is split off in closed form so the remainder is smooth.
double phi_eval(double x, double H, double alpha, const WaveletSpec& psi, std::int64_t resolution);

struct DecayFit {
    double slope = 0;  // of log|Phi| against log(1+|x|)
    double c1_hat = 0; // max over the grid of |Phi(x)| (1+|x|)^(2+1/alpha-H)
};

struct DecompositionDiagnostic {
    double delta = 0;
    int j = 0;
    long e_j = 0;
    double g_scale = 0;
    double r_scale = 0;
    double r_bound = 0;
};

// e_j = integer part of 2^(j*delta), with a one-ulp guard on the boundary.
long scale_window_count(int j, double delta);

// Cached evaluator for one (H, alpha, psi) triple.  Far-field values (x < -4)
// use the twice-integrated-by-parts form, which is free of the cancellation
// that degrades the defining integral at large |x|; the two routes are
// required to agree to 1e-8 in the overlap (see phi_parts tests).
class KernelProfile {
public:
    KernelProfile(double H, double alpha, WaveletSpec psi, std::int64_t quad_resolution = 1 << 13);

    double H() const { return H_; }
    double alpha() const { return alpha_; }
    double kappa() const { return H_ - 1.0 / alpha_; }
    double decay_exponent() const { return 2.0 + 1.0 / alpha_ - H_; }
    const WaveletSpec& psi() const { return psi_; }

    double phi(double x) const;                            // accuracy-dispatched
    double phi_direct(double x, std::int64_t res) const;   // defining integral
    double phi_parts(double x, std::int64_t res) const;    // x < 0 only

    // ∫_{1-e}^{1} |Phi|^alpha dx  (unit blocks, cached)
    double window_integral(long e) const;
    // ∫_{-inf}^{1-e} |Phi|^alpha dx, truncated where the decay envelope
    // contributes < 1e-12 of the running total.
    double tail_integral(long e) const;
    // ∫_{-inf}^{1} |Phi|^alpha dx
    double total_integral() const;

    DecayFit decay_fit(std::span<const double> x_grid) const;
    // Fit over a geometric grid on [-far, -2]; feeds the remainder bound.
    const DecayFit& envelope_fit() const;

    DecompositionDiagnostic diagnostic(int j, double delta) const;

private:
    double block(long i) const; // ∫ over [1-i, 2-i] of |Phi|^alpha

    double H_;
    double alpha_;
    WaveletSpec psi_;
    std::int64_t res_;
    Antiderivative psi2_;
    mutable std::map<long, double> blocks_;
    mutable double far_tail_ = -1.0; // ∫_{-inf}^{1-kMaxBlocks}
    mutable DecayFit envelope_;
    mutable bool have_envelope_ = false;
};

// Decay fit of a freshly built profile; prefer the KernelProfile method when
// several fits share one (H, alpha, psi).
DecayFit phi_decay_fit(double H, double alpha, const WaveletSpec& psi,
                       std::span<const double> x_grid, std::int64_t resolution = 1 << 13);

// Scale parameter of the localized block G: (2^-j ∫_{1-e_j}^1 |Phi|^alpha)^(1/alpha).
double g_scale_param(const KernelProfile& profile, int j, double delta);
double g_scale_param(int j, double delta, double H, double alpha, const WaveletSpec& psi);

// Scale parameter of the far-history remainder R and its closed-form bound
// c6^(1/alpha) 2^(-j(2 delta + 1/alpha - delta H)),
// c6 = c1_hat^alpha 2^(alpha(2-H)) / (alpha(2-H)).
std::pair<double, double> r_scale_param(const KernelProfile& profile, int j, double delta);
std::pair<double, double> r_scale_param(int j, double delta, double H, double alpha,
                                        const WaveletSpec& psi);

struct RepresentationReport {
    int j = 0;
    int k = 0;
    int replicates = 0;
    double empirical_scale = 0;
    double theoretical_scale = 0; // 2^{-j(H-1/alpha)} (2^-j ∫|Phi|^alpha)^{1/alpha}
    double rel_deviation = 0;
};

// Monte Carlo check of the coefficient representation: simulate paths,
// extract d_{j,k}, compare the fitted scale with the kernel prediction.
RepresentationReport representation_check(const SimConfig& config, const WaveletSpec& psi, int j,
                                          int k, int n_replicates, int threads = 1);

// Median |SaS(alpha,1)| estimated once per alpha from a dedicated stream;
// used to convert sample medians into scale estimates.
double sas_unit_median(double alpha, std::int64_t n_draws = std::int64_t{1} << 21);

} // namespace stablewave
