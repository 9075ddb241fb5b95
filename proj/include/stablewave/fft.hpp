#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stablewave {

// Fixed-size real circular convolution on top of FFTW (r2c/c2r, power-of-two
// length, FFTW_ESTIMATE plans so results do not depend on runtime tuning).
// Plan creation is serialized internally; apply() is safe to call from the
// owning thread while other instances run elsewhere.
class RealConvolver {
public:
    explicit RealConvolver(std::size_t n);
    ~RealConvolver();

    RealConvolver(const RealConvolver&) = delete;
    RealConvolver& operator=(const RealConvolver&) = delete;

    std::size_t size() const { return n_; }

    // Fixes the kernel (zero-padded to n) and caches its spectrum.
    void set_kernel(std::span<const double> kernel);

    // Circular convolution of the cached kernel with `input` (zero-padded);
    // writes the first `out.size()` entries of the result.
    void apply(std::span<const double> input, std::span<double> out);

private:
    std::size_t n_;
    double* real_buf_;
    void* kernel_spec_; // fftw_complex*
    void* work_spec_;   // fftw_complex*
    void* fwd_plan_;
    void* inv_plan_;
};

// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

} // namespace stablewave
