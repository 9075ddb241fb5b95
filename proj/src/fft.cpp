#include "stablewave/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "stablewave/errors.hpp"

namespace stablewave {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

RealConvolver::RealConvolver(std::size_t n) : n_(n) {
    if (n == 0 || (n & (n - 1)) != 0) throw ConfigError("RealConvolver: length must be a power of two");
    const std::size_t nc = n / 2 + 1;
    real_buf_ = fftw_alloc_real(n);
    kernel_spec_ = fftw_alloc_complex(nc);
    work_spec_ = fftw_alloc_complex(nc);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_buf_,
                                     static_cast<fftw_complex*>(work_spec_), FFTW_ESTIMATE);
    inv_plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), static_cast<fftw_complex*>(work_spec_),
                                     real_buf_, FFTW_ESTIMATE);
}

RealConvolver::~RealConvolver() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inv_plan_));
    fftw_free(real_buf_);
    fftw_free(kernel_spec_);
    fftw_free(work_spec_);
}

void RealConvolver::set_kernel(std::span<const double> kernel) {
    if (kernel.size() > n_) throw ConfigError("RealConvolver: kernel longer than transform");
    std::copy(kernel.begin(), kernel.end(), real_buf_);
    std::fill(real_buf_ + kernel.size(), real_buf_ + n_, 0.0);
    fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_plan_), real_buf_,
                         static_cast<fftw_complex*>(kernel_spec_));
}

void RealConvolver::apply(std::span<const double> input, std::span<double> out) {
    if (input.size() > n_ || out.size() > n_) throw ConfigError("RealConvolver: buffer too long");
    std::copy(input.begin(), input.end(), real_buf_);
    std::fill(real_buf_ + input.size(), real_buf_ + n_, 0.0);
    auto* ws = static_cast<fftw_complex*>(work_spec_);
    auto* ks = static_cast<fftw_complex*>(kernel_spec_);
    fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_plan_), real_buf_, ws);
    const double inv_n = 1.0 / static_cast<double>(n_);
    const std::size_t nc = n_ / 2 + 1;
    for (std::size_t i = 0; i < nc; ++i) {
        const double re = ws[i][0] * ks[i][0] - ws[i][1] * ks[i][1];
        const double im = ws[i][0] * ks[i][1] + ws[i][1] * ks[i][0];
        ws[i][0] = re * inv_n;
        ws[i][1] = im * inv_n;
    }
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_plan_), ws, real_buf_);
    std::copy(real_buf_, real_buf_ + out.size(), out.begin());
}

} // namespace stablewave
