#include "stablewave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "stablewave/errors.hpp"
#include "stablewave/parallel.hpp"
#include "stablewave/quadrature.hpp"
#include "stablewave/stable.hpp"
#include "stablewave/stats.hpp"

namespace stablewave {

namespace {

// Left of this the defining integral is a small residue of cancelling terms
// and its absolute trapezoid error overwhelms it; the by-parts form takes
// over there.
constexpr double kPartsBoundary = -1.0;
constexpr long kMaxBlocks = 16;                // unit blocks [1-i, 2-i], i = 1..16
constexpr std::int64_t kPsi2Resolution = 1 << 20;
constexpr std::int64_t kLatticeInner = 1 << 14; // y-mesh per unit for cached blocks
constexpr std::int64_t kLatticeOuter = 1 << 13; // x-mesh per unit for cached blocks
constexpr double kTailRelTolerance = 1e-12;

} // namespace

double phi_eval(double x, double H, double alpha, const WaveletSpec& psi, std::int64_t resolution) {
    if (resolution < (1 << 10)) throw ConfigError("phi_eval: resolution must be >= 2^10");
    const double kappa = H - 1.0 / alpha;
    if (x >= 1.0) return 0.0;
    if (x > 0.0) {
        // Kink at y = x: peel off the pure power times psi(x) in closed form,
        // trapezoid the Hölder-smooth remainder with the kink on a node.
        const double head = psi(x) * std::pow(1.0 - x, kappa + 1.0) / (kappa + 1.0);
        const double px = psi(x);
        auto g = [&](double y) { return pospow(y - x, kappa) * (psi(y) - px); };
        return head + trapezoid(g, x, 1.0, resolution);
    }
    auto g = [&](double y) { return pospow(y - x, kappa) * psi(y); };
    return trapezoid(g, 0.0, 1.0, resolution);
}

long scale_window_count(int j, double delta) {
    if (j < 0 || !(delta > 0.0)) throw ConfigError("scale_window_count: need j >= 0, delta > 0");
    const double v = std::exp2(static_cast<double>(j) * delta);
    double f = std::floor(v);
    if ((f + 1.0) - v < v * 1e-12) f += 1.0; // one-ulp guard at exact powers
    return static_cast<long>(f);
}

KernelProfile::KernelProfile(double H, double alpha, WaveletSpec psi, std::int64_t quad_resolution)
    : H_(H), alpha_(alpha), psi_(std::move(psi)), res_(quad_resolution),
      psi2_(antiderivative(psi_, 2, kPsi2Resolution)) {
    if (!(alpha_ > 1.0 && alpha_ <= 2.0)) throw ConfigError("KernelProfile: alpha out of (1,2]");
    if (!(H_ >= 1.0 / alpha_ && H_ < 1.0)) throw ConfigError("KernelProfile: H out of [1/alpha, 1)");
    if (res_ < (1 << 10)) throw ConfigError("KernelProfile: quad_resolution must be >= 2^10");
}

double KernelProfile::phi_direct(double x, std::int64_t res) const {
    return phi_eval(x, H_, alpha_, psi_, res);
}

double KernelProfile::phi_parts(double x, std::int64_t res) const {
    if (!(x < 0.0)) throw ConfigError("phi_parts: defined for x < 0 only");
    if (res < 2 || kPsi2Resolution % res != 0)
        throw ConfigError("phi_parts: resolution must divide the antiderivative mesh");
    const double kap = kappa();
    const std::int64_t stride = kPsi2Resolution / res;
    const double h = 1.0 / static_cast<double>(res);
    // Endpoint terms vanish with psi^(-2); interior Kahan sum.
    double sum = 0.0, comp = 0.0;
    for (std::int64_t i = 1; i < res; ++i) {
        const double y = static_cast<double>(i) * h;
        const double v = std::pow(y - x, kap - 2.0) * psi2_.values[i * stride] - comp;
        const double t = sum + v;
        comp = (t - sum) - v;
        sum = t;
    }
    return kap * (kap - 1.0) * sum * h;
}

double KernelProfile::phi(double x) const {
    if (x >= 1.0) return 0.0;
    if (x > kPartsBoundary) return phi_direct(x, res_);
    return phi_parts(x, std::min<std::int64_t>(res_, 1 << 12));
}

// Unit block ∫_{1-i}^{2-i} |Phi|^alpha dx.  Near blocks share a lattice with
// the wavelet mesh so the power kernel is tabulated once per block; far
// blocks use the by-parts route pointwise.
double KernelProfile::block(long i) const {
    if (auto it = blocks_.find(i); it != blocks_.end()) return it->second;
    const double kap = kappa();
    double value = 0.0;

    if (i <= 2) {
        const std::int64_t u = kLatticeOuter, v = kLatticeInner;
        const double hv = 1.0 / static_cast<double>(v);
        std::vector<double> psi_tab(v + 1);
        for (std::int64_t s = 0; s <= v; ++s) psi_tab[s] = psi_(static_cast<double>(s) * hv);
        // y - x = (i-1) + q/v for q = s - 2t
        std::vector<double> pow_tab(2 * v + 1);
        for (std::int64_t q = -v; q <= v; ++q)
            pow_tab[q + v] = pospow(static_cast<double>(i - 1) + static_cast<double>(q) * hv, kap);

        double bsum = 0.0, bcomp = 0.0;
        for (std::int64_t t = 0; t <= u; ++t) {
            const double x = (1.0 - static_cast<double>(i)) + static_cast<double>(t) / static_cast<double>(u);
            double ph;
            if (i == 1) {
                const double px = psi_tab[2 * t];
                double sum = 0.0, comp = 0.0;
                for (std::int64_t s = 2 * t + 1; s <= v; ++s) {
                    const double w = (s == v) ? 0.5 : 1.0;
                    const double y = w * pow_tab[s - 2 * t + v] * (psi_tab[s] - px) - comp;
                    const double tt = sum + y;
                    comp = (tt - sum) - y;
                    sum = tt;
                }
                ph = psi_tab[2 * t] * std::pow(1.0 - x, kap + 1.0) / (kap + 1.0) + sum * hv;
            } else {
                double sum = 0.0, comp = 0.0;
                for (std::int64_t s = 1; s < v; ++s) {
                    const double y = pow_tab[s - 2 * t + v] * psi_tab[s] - comp;
                    const double tt = sum + y;
                    comp = (tt - sum) - y;
                    sum = tt;
                }
                ph = sum * hv;
            }
            const double g = std::pow(std::fabs(ph), alpha_);
            const double w = (t == 0 || t == u) ? 0.5 : 1.0;
            const double y = w * g - bcomp;
            const double tt = bsum + y;
            bcomp = (tt - bsum) - y;
            bsum = tt;
        }
        value = bsum / static_cast<double>(u);
    } else {
        auto g = [&](double x) { return std::pow(std::fabs(phi_parts(x, 1 << 12)), alpha_); };
        value = trapezoid(g, 1.0 - static_cast<double>(i), 2.0 - static_cast<double>(i), 1 << 12);
    }
    blocks_[i] = value;
    return value;
}

double KernelProfile::window_integral(long e) const {
    if (e < 1 || e > kMaxBlocks)
        throw ConfigError("window_integral: window count out of the supported range [1,16]");
    double sum = 0.0;
    for (long i = 1; i <= e; ++i) sum += block(i);
    return sum;
}

const DecayFit& KernelProfile::envelope_fit() const {
    if (!have_envelope_) {
        // geometric grid, two points per octave over [-2^12, -2]
        std::vector<double> grid;
        for (double x = 2.0; x <= 4096.0 * 1.0001; x *= std::sqrt(2.0)) grid.push_back(-x);
        envelope_ = decay_fit(grid);
        have_envelope_ = true;
    }
    return envelope_;
}

double KernelProfile::tail_integral(long e) const {
    if (e < 1 || e > kMaxBlocks)
        throw ConfigError("tail_integral: window count out of the supported range [1,16]");
    if (far_tail_ < 0.0) {
        // ∫ below x = 1 - kMaxBlocks in width-doubling segments, truncated when
        // the fitted envelope bounds the remainder below 1e-12 of the total.
        const double c1 = envelope_fit().c1_hat;
        const double p = decay_exponent();
        const double pa = alpha_ * p; // tail integrand exponent
        double upper = 1.0 - static_cast<double>(kMaxBlocks);
        double width = static_cast<double>(kMaxBlocks);
        double acc = 0.0;
        for (;;) {
            const double lower = upper - width;
            auto g = [&](double x) { return std::pow(std::fabs(phi_parts(x, 1 << 10)), alpha_); };
            acc += trapezoid(g, lower, upper, 1 << 11);
            const double remainder = std::pow(c1, alpha_) *
                                     std::pow(1.0 - lower, 1.0 - pa) / (pa - 1.0);
            if (remainder < kTailRelTolerance * acc) break;
            upper = lower;
            width *= 2.0;
        }
        far_tail_ = acc;
    }
    double sum = far_tail_;
    for (long i = e + 1; i <= kMaxBlocks; ++i) sum += block(i);
    return sum;
}

double KernelProfile::total_integral() const { return window_integral(kMaxBlocks) + tail_integral(kMaxBlocks); }

DecayFit KernelProfile::decay_fit(std::span<const double> x_grid) const {
    if (x_grid.size() < 8) throw ConfigError("decay_fit: need >= 8 grid points");
    const double p = decay_exponent();
    std::vector<double> lx, ly;
    double c1 = 0.0;
    std::size_t dead = 0;
    for (double x : x_grid) {
        if (!(x <= -1.0)) throw ConfigError("decay_fit: grid must lie in (-inf, -1]");
        const double v = std::fabs(phi(x));
        if (v < 1e-300) {
            ++dead;
            continue;
        }
        lx.push_back(std::log1p(std::fabs(x)));
        ly.push_back(std::log(v));
        c1 = std::max(c1, v * std::pow(1.0 + std::fabs(x), p));
    }
    if (dead * 2 >= x_grid.size() || lx.size() < 2)
        throw NumericError("decay_fit: kernel numerically zero on the grid");
    DecayFit out;
    out.slope = fit_line(lx, ly).slope;
    out.c1_hat = c1;
    return out;
}

DecayFit phi_decay_fit(double H, double alpha, const WaveletSpec& psi,
                       std::span<const double> x_grid, std::int64_t resolution) {
    return KernelProfile(H, alpha, psi, resolution).decay_fit(x_grid);
}

double g_scale_param(int j, double delta, double H, double alpha, const WaveletSpec& psi) {
    return g_scale_param(KernelProfile(H, alpha, psi), j, delta);
}

std::pair<double, double> r_scale_param(int j, double delta, double H, double alpha,
                                        const WaveletSpec& psi) {
    return r_scale_param(KernelProfile(H, alpha, psi), j, delta);
}

double g_scale_param(const KernelProfile& profile, int j, double delta) {
    if (j < 1 || !(delta > 0.0 && delta < 1.0 / 3.0))
        throw ConfigError("g_scale_param: need j >= 1, delta in (0, 1/3)");
    const long e = scale_window_count(j, delta);
    return std::pow(std::exp2(-j) * profile.window_integral(e), 1.0 / profile.alpha());
}

std::pair<double, double> r_scale_param(const KernelProfile& profile, int j, double delta) {
    if (j < 1 || !(delta > 0.0 && delta < 1.0 / 3.0))
        throw ConfigError("r_scale_param: need j >= 1, delta in (0, 1/3)");
    const long e = scale_window_count(j, delta);
    const double a = profile.alpha();
    const double h = profile.H();
    const double r = std::pow(std::exp2(-j) * profile.tail_integral(e), 1.0 / a);
    const double c1 = profile.envelope_fit().c1_hat;
    const double c6 = std::pow(c1, a) * std::exp2(a * (2.0 - h)) / (a * (2.0 - h));
    const double bound = std::pow(c6, 1.0 / a) * std::exp2(-j * (2.0 * delta + 1.0 / a - delta * h));
    return {r, bound};
}

DecompositionDiagnostic KernelProfile::diagnostic(int j, double delta) const {
    DecompositionDiagnostic d;
    d.delta = delta;
    d.j = j;
    d.e_j = scale_window_count(j, delta);
    d.g_scale = g_scale_param(*this, j, delta);
    auto [r, bound] = r_scale_param(*this, j, delta);
    d.r_scale = r;
    d.r_bound = bound;
    return d;
}

double sas_unit_median(double alpha, std::int64_t n_draws) {
    static std::map<std::pair<double, std::int64_t>, double> cache;
    static std::mutex mutex;
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find({alpha, n_draws}); it != cache.end()) return it->second;
    }
    RngStream rng(0x5EEDFACE, static_cast<std::uint64_t>(alpha * 4096.0));
    const StableLaw law(alpha, 1.0);
    std::vector<double> mags(static_cast<std::size_t>(n_draws));
    for (auto& v : mags) v = std::fabs(sas_sample(law, rng));
    const double m = median(std::move(mags));
    std::lock_guard<std::mutex> lock(mutex);
    cache[{alpha, n_draws}] = m;
    return m;
}

RepresentationReport representation_check(const SimConfig& config, const WaveletSpec& psi, int j,
                                          int k, int n_replicates, int threads) {
    if (n_replicates < 500) throw ConfigError("representation_check: need >= 500 replicates");
    config.validate();
    int log_n = 0;
    while ((std::int64_t{1} << log_n) < config.n_grid) ++log_n;
    const int oversample = log_n - j;
    if (oversample < 3) throw ConfigError("representation_check: j too large for this grid");
    if (k < 0 || k >= (1 << j)) throw ConfigError("representation_check: k out of range");

    std::vector<double> mags(static_cast<std::size_t>(n_replicates));
    parallel_for(n_replicates, threads, [&](long rep) {
        const auto path = simulate_path(config, static_cast<std::uint64_t>(rep));
        const auto pyr = analyze(path, psi, j, j, oversample);
        mags[static_cast<std::size_t>(rep)] = std::fabs(pyr.level(j)[static_cast<std::size_t>(k)]);
    });

    KernelProfile profile(config.H, config.alpha, psi);
    RepresentationReport rep;
    rep.j = j;
    rep.k = k;
    rep.replicates = n_replicates;
    rep.empirical_scale = median(std::move(mags)) / sas_unit_median(config.alpha);
    rep.theoretical_scale = std::exp2(-j * profile.kappa()) *
                            std::pow(std::exp2(-j) * profile.total_integral(), 1.0 / config.alpha);
    rep.rel_deviation = rep.empirical_scale / rep.theoretical_scale - 1.0;
    return rep;
}

} // namespace stablewave
